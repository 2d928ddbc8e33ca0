// Everything in one include.

#ifndef TEAMLOGIC_TEAMLOGIC_HPP
#define TEAMLOGIC_TEAMLOGIC_HPP

#include "audit.hpp"
#include "builders.hpp"
#include "context.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "membership.hpp"
#include "normal_form.hpp"
#include "oracle.hpp"
#include "proof.hpp"
#include "proof_json.hpp"
#include "semantics.hpp"
#include "syntax.hpp"
#include "team.hpp"

#endif // TEAMLOGIC_TEAMLOGIC_HPP
