// Registry of identities: each id binds a left side, a right side and the
// hypotheses that make the identity hold.
#pragma once

#include "zetabessel/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace zb {

enum class Section { main, cohen, voronoi, oracle };

struct CatalogueEntry {
    std::string id;
    Section section;
    std::string statement;  // short description of the weight
    bool printed_variant = false;  // a sign-as-typeset variant kept for reporting
};

const std::vector<CatalogueEntry>& catalogue();
const CatalogueEntry& catalogue_entry(const std::string& id);  // DomainError on unknown ids
hp default_tolerance(Section s);

struct IdentityCase {
    std::string id;
    std::map<std::string, std::string> params;  // decimal strings, "1/3" accepted
    std::string notes;

    bool has(const std::string& name) const { return params.count(name) > 0; }
};

struct TailSummary {
    hp bound;
    std::int64_t terms_used = 0;
};

struct VerificationReport {
    IdentityCase case_;
    hpc lhs, rhs;
    hp abs_residual, rel_residual;
    TailSummary lhs_tail, rhs_tail;
    hp tolerance;
    bool near_zero = false;
    bool passed = false;
    std::int64_t runtime_ms = 0;
    std::string error;  // set when an evaluator threw
    unsigned digits = 0;
};

// throws HypothesisError naming the violated precondition
void validate_case(const IdentityCase& c, const PrecisionContext& ctx);

TailEstimate evaluate_lhs(const IdentityCase& c, const EvaluationBudget& budget, const PrecisionContext& ctx);
TailEstimate evaluate_rhs(const IdentityCase& c, const EvaluationBudget& budget, const PrecisionContext& ctx);

// budget.target_tolerance <= 0 selects the section default
VerificationReport verify(const IdentityCase& c, const EvaluationBudget& budget, const PrecisionContext& ctx);
// residual bookkeeping shared with the voronoi runner
void finish_report(VerificationReport& r, const TailEstimate& lhs, const TailEstimate& rhs, const PrecisionContext& ctx);

enum class Side { lhs, rhs };

// (1/(i phi(q))) sum_{chi odd} chi(h) tau(chi-bar) side(chi), for the odd
// character families T_M1, T_M2, T_CHI12_SAME (chi1 mod p at h1 and chi2 mod q
// at h) and V_CHI_ODD (side scaled by tau(chi) q^{-1-nu/2} first)
hpc character_average(const std::string& base, std::int64_t q, std::int64_t h, Side side,
                      const std::map<std::string, std::string>& params, const EvaluationBudget& budget,
                      const PrecisionContext& ctx);
// the trigonometric case the average should reproduce
IdentityCase averaged_counterpart(const std::string& base, std::int64_t q, std::int64_t h,
                                  const std::map<std::string, std::string>& params);

// equivalence checks for the suite runner:
//   EQ_AVERAGE   params base, q, h, side plus the base case's params; character_average
//                against the trigonometric counterpart (default tolerance 1e-10)
//   EQ_R6_CHAIN  params nu, a, x, side; 16 T_ODD2 - 4 T_ODD1 at theta = 1/4 against C_R6
bool is_equivalence_id(const std::string& id);
VerificationReport verify_equivalence(const IdentityCase& c, const EvaluationBudget& budget,
                                      const PrecisionContext& ctx);

// parameter access with hypothesis errors for missing values
hp param_hp(const IdentityCase& c, const std::string& name, const PrecisionContext& ctx);
hp param_hp(const IdentityCase& c, const std::string& name, const hp& fallback, const PrecisionContext& ctx);
std::int64_t param_int(const IdentityCase& c, const std::string& name);
std::int64_t param_int(const IdentityCase& c, const std::string& name, std::int64_t fallback);

}  // namespace zb
