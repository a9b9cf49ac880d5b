#pragma once

// JSON views of every public result type. Key order is fixed (insertion
// order), arrays follow the library's deterministic orders, and unbounded
// integers are rendered as decimal strings, so serialized reports are
// byte-identical across runs and thread counts.

#include <string>
#include <vector>

#include "json.hpp"

#include "monodromy.hpp"
#include "sieve.hpp"
#include "simplicity.hpp"
#include "zeta.hpp"

namespace splitscan {

using OJson = nlohmann::ordered_json;

inline OJson int_list_json(const std::vector<Int>& v) {
    OJson a = OJson::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline OJson lpoly_json(const LPolynomial& L) {
    OJson j;
    j["q"] = L.q.str();
    j["g"] = L.g;
    j["coeffs"] = int_list_json(L.c);
    return j;
}

inline OJson tfactors_json(const std::vector<TFactor>& fs) {
    OJson a = OJson::array();
    for (const auto& f : fs) {
        OJson e;
        e["coeffs"] = int_list_json(f.coeffs);
        e["multiplicity"] = f.multiplicity;
        a.push_back(std::move(e));
    }
    return a;
}

inline OJson simplicity_json(const SimplicityReport& r) {
    OJson j;
    j["fiber"] = r.fiber;
    j["verdict"] = verdict_name(r.verdict);
    if (r.verdict == Verdict::SplitsOverExtension) j["split_m"] = r.split_m;
    j["evidence"] = r.evidence;
    j["m_bound"] = r.m_bound;
    j["certificate"] = r.weyl_certificate;
    if (!r.caveat.empty()) j["caveat"] = r.caveat;
    return j;
}

inline OJson scan_json(const ScanSummary& s, bool include_fibers = true) {
    OJson j;
    j["p"] = s.p;
    j["f"] = s.f;
    j["genus"] = s.genus;
    j["m_bound"] = s.m_bound;
    j["total"] = s.total;
    j["good"] = s.good;
    j["bad"] = s.bad;
    j["defect"] = s.defect;
    j["density"] = s.density;
    OJson counts;
    for (const auto& [k, v] : s.verdict_counts) counts[k] = v; // std::map: sorted keys
    j["verdict_counts"] = std::move(counts);
    j["omega"] = s.omega;
    if (include_fibers) {
        OJson fibers = OJson::array();
        for (const auto& fr : s.fibers) {
            OJson e;
            e["t"] = fr.t;
            e["bad"] = fr.bad;
            if (!fr.bad) e["report"] = simplicity_json(fr.report);
            fibers.push_back(std::move(e));
        }
        j["fibers"] = std::move(fibers);
    }
    j["csv"] = s.csv();
    return j;
}

inline OJson candidate_json(const CandidateStatus& c) {
    OJson j;
    j["t"] = to_string(c.t);
    j["outcome"] = outcome_name(c.outcome);
    if (c.outcome == CandidateOutcome::CertifiedSimple) j["certifying_prime"] = c.certifying_prime;
    OJson tested = OJson::array();
    for (const auto& pv : c.tested) {
        OJson e;
        e["p"] = pv.p;
        e["good"] = pv.good;
        if (pv.good)
            e["report"] = simplicity_json(pv.report);
        else
            e["bad_reason"] = pv.bad_reason;
        tested.push_back(std::move(e));
    }
    j["tested"] = std::move(tested);
    if (!c.caveat.empty()) j["caveat"] = c.caveat;
    return j;
}

inline OJson ball_search_json(const BallSearchResult& r) {
    OJson j;
    j["height_bound"] = r.height_bound;
    j["primes"] = r.primes;
    j["certified"] = r.certified;
    j["surviving"] = r.surviving;
    j["bad_everywhere"] = r.bad_everywhere;
    OJson ex = OJson::array();
    for (const auto& t : r.excluded) ex.push_back(to_string(t));
    j["excluded"] = std::move(ex);
    OJson st = OJson::array();
    for (const auto& c : r.statuses) st.push_back(candidate_json(c));
    j["candidates"] = std::move(st);
    return j;
}

inline OJson sieve_bound_json(const SieveBound& b) {
    OJson j;
    j["form"] = form_name(b.form);
    j["numerator"] = b.numerator;
    j["denominator"] = b.denominator;
    j["finite"] = b.finite;
    if (b.finite) j["bound"] = b.bound;
    return j;
}

inline OJson sieve_report_json(const SieveInstance& inst, const SieveBound& full,
                               const SieveBound& weak) {
    OJson j;
    j["B"] = inst.B;
    OJson primes = OJson::array();
    for (const auto& r : inst.records) {
        OJson e;
        e["p"] = r.p;
        e["nu"] = r.nu;
        primes.push_back(std::move(e));
    }
    j["primes"] = std::move(primes);
    j["full"] = sieve_bound_json(full);
    j["weak"] = sieve_bound_json(weak);
    return j;
}

inline OJson corollary_json(const CorollaryBound& c) {
    OJson j;
    j["beta_argument"] = c.beta_argument;
    j["beta_value"] = c.beta_value;
    j["value"] = c.value;
    j["asymptotic_form"] = c.asymptotic_form;
    j["explicit_q_form"] = c.explicit_q_form;
    return j;
}

inline OJson theorem_json(const TheoremBound& t) {
    OJson j;
    j["gamma"] = t.gamma;
    j["theorem_form"] = t.theorem_form;
    j["intro_form"] = t.intro_form;
    j["label"] = t.label;
    return j;
}

inline OJson pipeline_json(const PipelineResult& r) {
    OJson j;
    j["f"] = r.f;
    j["genus"] = r.genus;
    j["B"] = r.B;
    j["prime_limit"] = r.prime_limit;
    j["m_bound"] = r.m_bound;
    OJson primes = OJson::array();
    for (const auto& pp : r.primes) {
        OJson e;
        e["p"] = pp.p;
        e["skipped"] = pp.skipped;
        if (pp.skipped) {
            e["skip_reason"] = pp.skip_reason;
        } else {
            e["roots"] = pp.roots;
            e["omega"] = pp.omega;
            e["nu"] = pp.nu;
            e["omega_elems"] = pp.omega_elems;
            e["nu_half_ratio"] = pp.nu_half_ratio;
        }
        primes.push_back(std::move(e));
    }
    j["primes"] = std::move(primes);
    j["instance_report"] = sieve_report_json(r.instance, r.full, r.weak);
    j["caveats"] = r.caveats;
    j["diagnostics"] = r.diagnostics;
    return j;
}

// Uniform envelope for the group-theory calculators:
// {op, inputs, value, condition_flags}.
inline OJson monodromy_json(const std::string& op, OJson inputs, OJson value,
                            OJson condition_flags = OJson::object()) {
    OJson j;
    j["op"] = op;
    j["inputs"] = std::move(inputs);
    j["value"] = std::move(value);
    j["condition_flags"] = std::move(condition_flags);
    return j;
}

inline OJson fraction_json(const ExactFraction& f) {
    OJson j;
    j["num"] = f.num.str();
    j["den"] = f.den.str();
    j["display"] = f.str();
    return j;
}

inline OJson lemma_report_json(const TransvectionLemmaReport& r) {
    OJson j;
    j["ell"] = r.ell;
    j["g"] = r.g;
    j["group_order"] = r.group_order.str();
    j["threshold"] = r.threshold;
    j["max_proper_transvections"] = r.max_proper_transvections;
    j["verified"] = r.verified;
    j["proper_masks"] = r.proper_masks;
    j["closures_computed"] = r.closures_computed;
    return j;
}

} // namespace splitscan
