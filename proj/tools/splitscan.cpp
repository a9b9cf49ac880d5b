// splitscan: command-line front-end.
//
// Subcommands: zeta, scan, sieve-bound, search, theory-bound,
// monodromy {bh|threshold|verify-tr|genus-bound|ratio|minkowski|degeneration}.
// Long-running subcommands cache their JSON payloads in an append-only JSONL
// file keyed by a canonical input hash; --verify-cache recomputes sampled
// records and compares bytes.
//
// Exit codes: 0 success (including a non-finite sieve bound), 2 precondition
// violation, 3 resource cap exceeded.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "splitscan/cache.hpp"
#include "splitscan/heights.hpp"
#include "splitscan/json_report.hpp"
#include "splitscan/monodromy.hpp"
#include "splitscan/sieve.hpp"
#include "splitscan/simplicity.hpp"
#include "splitscan/zeta.hpp"

namespace {

using splitscan::OJson;

std::vector<long long> parse_poly(const std::string& s) {
    std::vector<long long> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw splitscan::precondition_error("unparsable polynomial coefficient: '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw splitscan::precondition_error("empty polynomial");
    return out;
}

// "1,0,2;0,1,0;..." -> vectors over F_ell (entries reduced mod ell).
std::vector<splitscan::SpVec> parse_lines(const std::string& s, uint32_t ell) {
    std::vector<splitscan::SpVec> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t semi = s.find(';', pos);
        std::string vec = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        auto coords = parse_poly(vec);
        splitscan::SpVec v;
        for (long long c : coords) {
            long long r = c % static_cast<long long>(ell);
            if (r < 0) r += ell;
            v.push_back(static_cast<uint8_t>(r));
        }
        out.push_back(std::move(v));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (out.empty()) throw splitscan::precondition_error("no lines given");
    return out;
}

std::vector<uint32_t> first_odd_primes(unsigned n) {
    std::vector<uint32_t> out;
    uint64_t limit = 32;
    while (out.size() < n) {
        out.clear();
        for (uint64_t p : splitscan::primes_up_to(limit)) {
            if (p == 2) continue;
            out.push_back(static_cast<uint32_t>(p));
            if (out.size() == n) break;
        }
        limit *= 2;
    }
    return out;
}

OJson run_zeta(const std::vector<long long>& poly, uint32_t p) {
    splitscan::LPolynomial L = splitscan::l_polynomial(poly, p);
    OJson j;
    j["poly"] = poly;
    j["p"] = p;
    j["L"] = splitscan::lpoly_json(L);
    OJson counts = OJson::array();
    for (unsigned d = 1; d <= 2 * L.g; ++d) {
        OJson e;
        e["d"] = d;
        e["points"] = splitscan::predicted_point_count(L, d).str();
        e["source"] = d <= L.g ? "measured" : "predicted";
        counts.push_back(std::move(e));
    }
    j["counts"] = std::move(counts);
    j["weil_check"] = splitscan::verify_weil(L);
    return j;
}

OJson run_scan(const std::vector<long long>& f, uint32_t p, unsigned M, unsigned jobs) {
    return splitscan::scan_json(splitscan::scan_fq(f, p, M, jobs));
}

OJson run_sieve_bound(const std::vector<long long>& f, unsigned B, uint32_t prime_limit, unsigned M,
                      unsigned jobs) {
    return splitscan::pipeline_json(splitscan::measured_pipeline(f, B, prime_limit, M, jobs));
}

OJson run_search(const std::vector<long long>& f, unsigned B, unsigned n_primes, unsigned M,
                 unsigned jobs) {
    auto primes = first_odd_primes(n_primes);
    auto res = splitscan::search_height_ball(f, B, primes, M, jobs);
    OJson j = splitscan::ball_search_json(res);
    OJson surviving = OJson::array();
    for (const auto& c : res.statuses)
        if (c.outcome == splitscan::CandidateOutcome::SurvivingCandidate)
            surviving.push_back(splitscan::to_string(c.t));
    j["surviving_params"] = std::move(surviving);
    return j;
}

OJson run_theory_bound(unsigned g, double B, double c_abs, double d_const) {
    splitscan::EffectiveBoundInputs in;
    in.g = g;
    in.B = B;
    in.C_abs = c_abs;
    in.D = d_const;
    OJson j = splitscan::theorem_json(splitscan::analytic_theorem_bound(in));
    OJson wrap;
    wrap["g"] = g;
    wrap["B"] = B;
    wrap["C_abs"] = c_abs;
    wrap["D"] = d_const;
    wrap["gamma"] = j["gamma"];
    wrap["report"] = std::move(j);
    return wrap;
}

// Recompute a cached record from its stored inputs; nullopt when the command
// has no replayable implementation.
std::optional<OJson> replay_dispatch(const std::string& command, const OJson& inputs) {
    try {
        if (command == "zeta")
            return run_zeta(inputs.at("poly").get<std::vector<long long>>(),
                            inputs.at("p").get<uint32_t>());
        if (command == "scan")
            return run_scan(inputs.at("f").get<std::vector<long long>>(),
                            inputs.at("p").get<uint32_t>(), inputs.at("m_bound").get<unsigned>(), 1);
        if (command == "sieve-bound")
            return run_sieve_bound(inputs.at("f").get<std::vector<long long>>(),
                                   inputs.at("B").get<unsigned>(),
                                   inputs.at("prime_limit").get<uint32_t>(),
                                   inputs.at("m_bound").get<unsigned>(), 1);
        if (command == "search")
            return run_search(inputs.at("f").get<std::vector<long long>>(),
                              inputs.at("B").get<unsigned>(), inputs.at("n_primes").get<unsigned>(),
                              inputs.at("m_bound").get<unsigned>(), 1);
    } catch (const OJson::exception&) {
        return std::nullopt; // malformed stored inputs: report as unverifiable
    }
    return std::nullopt;
}

void print_json(const OJson& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Split-fiber detection and explicit sieve bounds for quadratic-twist pencils "
                 "y^2 = f(x)(x - t)"};
    app.require_subcommand(0, 1);

    std::string format = "json";
    std::string cache_path;
    bool no_cache = false;
    bool verify_cache = false;
    unsigned jobs = 1;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cache", cache_path, "Cache file path (overrides SPLITSCAN_CACHE)");
    app.add_flag("--no-cache", no_cache, "Disable the result cache entirely");
    app.add_flag("--verify-cache", verify_cache,
                 "Recompute sampled cache records and compare bytes, then exit");
    app.add_option("--jobs", jobs, "Worker thread count")->check(CLI::Range(1u, 64u));

    std::string poly_str, f_str, lines_str;
    uint32_t p = 0, prime_limit = 0, ell = 3;
    unsigned m_bound = 0, height = 0, n_primes = 10, g = 1, cap_g = 1;
    uint64_t gb_m = 0, gb_index = 1, gb_base_genus = 0, tr_cap = 1000000ull;
    double th_height = 3.0, c_abs = 1.0, d_const = 1.0;

    auto* sub_zeta = app.add_subcommand("zeta", "L-polynomial and point counts of y^2 = h(x) / F_p");
    sub_zeta->add_option("--poly", poly_str, "h coefficients, ascending, comma-separated")->required();
    sub_zeta->add_option("--p", p, "odd prime")->required();

    auto* sub_scan = app.add_subcommand("scan", "Classify every fiber t in F_p of y^2 = f(x)(x-t)");
    sub_scan->add_option("--f", f_str, "f coefficients, ascending, comma-separated")->required();
    sub_scan->add_option("--p", p, "odd prime")->required();
    sub_scan->add_option("--m-bound", m_bound, "extension-degree search bound (0 = automatic)");

    auto* sub_sieve = app.add_subcommand(
        "sieve-bound", "Measure admissible residue counts over primes and evaluate the sieve bound");
    sub_sieve->add_option("--f", f_str, "f coefficients, ascending, comma-separated")->required();
    sub_sieve->add_option("--height", height, "height bound B")->required();
    sub_sieve->add_option("--prime-limit", prime_limit, "use odd primes up to this limit")->required();
    sub_sieve->add_option("--m-bound", m_bound, "extension-degree search bound (0 = automatic)");

    auto* sub_search = app.add_subcommand(
        "search", "Classify every rational t of height <= B against a list of primes");
    sub_search->add_option("--f", f_str, "f coefficients, ascending, comma-separated")->required();
    sub_search->add_option("--height", height, "height bound B")->required();
    sub_search->add_option("--primes", n_primes, "number of odd primes to test against");
    sub_search->add_option("--m-bound", m_bound, "extension-degree search bound (0 = automatic)");

    auto* sub_theory = app.add_subcommand("theory-bound",
                                          "Evaluate the closed-form exceptional-set bound shapes");
    sub_theory->add_option("--g", g, "genus")->required();
    sub_theory->add_option("--height", th_height, "height bound B (>= 3)")->required();
    sub_theory->add_option("--c-abs", c_abs, "absolute constant in the headline form");
    sub_theory->add_option("--d", d_const, "absolute constant in the gamma form (>= 1)");

    auto* sub_mono = app.add_subcommand("monodromy", "Symplectic group calculators");
    sub_mono->require_subcommand(1);
    auto* mono_bh = sub_mono->add_subcommand(
        "bh", "Transvection generation test: line span + pairing-graph connectivity");
    mono_bh->add_option("--ell", ell, "odd prime")->required();
    mono_bh->add_option("--g", cap_g, "genus")->required();
    mono_bh->add_option("--lines", lines_str, "semicolon-separated vectors, e.g. '1,0;0,1'")
        ->required();
    auto* mono_thr = sub_mono->add_subcommand("threshold", "Simple-degeneration place threshold");
    mono_thr->add_option("--ell", ell)->required();
    mono_thr->add_option("--g", cap_g)->required();
    auto* mono_vtr = sub_mono->add_subcommand(
        "verify-tr", "Exhaustively verify the proper-subgroup transvection count bound");
    mono_vtr->add_option("--ell", ell)->required();
    mono_vtr->add_option("--g", cap_g)->required();
    mono_vtr->add_option("--cap", tr_cap, "group order cap for enumeration");
    auto* mono_gb = sub_mono->add_subcommand("genus-bound", "Covering-curve genus lower bound");
    mono_gb->add_option("--ell", ell)->required();
    mono_gb->add_option("--g", cap_g)->required();
    mono_gb->add_option("--m", gb_m, "number of simply-degenerate places")->required();
    mono_gb->add_option("--index", gb_index, "subgroup index (cover degree)");
    mono_gb->add_option("--base-genus", gb_base_genus, "genus of the base curve");
    auto* mono_ratio = sub_mono->add_subcommand("ratio", "Proper-subgroup conjugacy-class ratio cap");
    mono_ratio->add_option("--ell", ell)->required();
    mono_ratio->add_option("--g", cap_g)->required();
    auto* mono_mink = sub_mono->add_subcommand("minkowski", "Torsion-group order bound via GL(n, Z/3)");
    mono_mink->add_option("--g", cap_g)->required();
    auto* mono_deg = sub_mono->add_subcommand("degeneration",
                                              "Extended degeneration report for (ell, g)");
    mono_deg->add_option("--ell", ell)->required();
    mono_deg->add_option("--g", cap_g)->required();

    for (auto* s : {sub_zeta, sub_scan, sub_sieve, sub_search, sub_theory, sub_mono}) s->fallthrough();
    for (auto* s : {mono_bh, mono_thr, mono_vtr, mono_gb, mono_ratio, mono_mink, mono_deg})
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        // csv is defined only for the tabular reports.
        if (format == "csv" && !(sub_scan->parsed() || sub_sieve->parsed()))
            throw splitscan::precondition_error("csv output exists only for scan and sieve-bound");

        std::string resolved_cache = cache_path;
        if (resolved_cache.empty()) {
            const char* env = std::getenv("SPLITSCAN_CACHE");
            resolved_cache = env ? env : "splitscan-cache.jsonl";
        }
        splitscan::ResultCache cache(resolved_cache, !no_cache);

        if (verify_cache) {
            auto outcome = cache.verify(replay_dispatch);
            OJson j;
            j["cache"] = resolved_cache;
            j["records"] = cache.records().size();
            j["checked"] = outcome.checked;
            j["matched"] = outcome.matched;
            j["mismatched_keys"] = outcome.mismatched_keys;
            j["unverifiable_keys"] = outcome.unverifiable_keys;
            print_json(j);
            return outcome.mismatched_keys.empty() ? 0 : 2;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << app.help() << "\n";
            return 2;
        }

        auto cached_run = [&](const std::string& command, const OJson& inputs,
                              const std::function<OJson()>& compute) {
            std::string key = splitscan::cache_key(command, inputs);
            if (auto hit = cache.lookup(key)) return *hit;
            OJson payload = compute();
            cache.store(command, inputs, payload);
            return payload;
        };

        if (sub_zeta->parsed()) {
            auto poly = parse_poly(poly_str);
            OJson inputs;
            inputs["poly"] = poly;
            inputs["p"] = p;
            print_json(cached_run("zeta", inputs, [&] { return run_zeta(poly, p); }));
            return 0;
        }

        if (sub_scan->parsed()) {
            auto f = parse_poly(f_str);
            OJson inputs;
            inputs["f"] = f;
            inputs["p"] = p;
            inputs["m_bound"] = m_bound;
            OJson payload = cached_run("scan", inputs, [&] { return run_scan(f, p, m_bound, jobs); });
            if (format == "csv") {
                std::cout << "p,good,bad,defect,density\n"
                          << payload.at("csv").get<std::string>() << "\n";
            } else {
                print_json(payload);
            }
            return 0;
        }

        if (sub_sieve->parsed()) {
            auto f = parse_poly(f_str);
            OJson inputs;
            inputs["f"] = f;
            inputs["B"] = height;
            inputs["prime_limit"] = prime_limit;
            inputs["m_bound"] = m_bound;
            OJson payload = cached_run(
                "sieve-bound", inputs, [&] { return run_sieve_bound(f, height, prime_limit, m_bound, jobs); });
            if (format == "csv") {
                std::cout << "p,roots,omega,nu,nu_half_ratio\n";
                for (const auto& e : payload.at("primes")) {
                    if (e.at("skipped").get<bool>()) continue;
                    std::cout << e.at("p").get<uint64_t>() << "," << e.at("roots").get<uint64_t>()
                              << "," << e.at("omega").get<uint64_t>() << ","
                              << e.at("nu").get<uint64_t>() << "," << e.at("nu_half_ratio").dump()
                              << "\n";
                }
            } else {
                print_json(payload);
            }
            return 0;
        }

        if (sub_search->parsed()) {
            auto f = parse_poly(f_str);
            OJson inputs;
            inputs["f"] = f;
            inputs["B"] = height;
            inputs["n_primes"] = n_primes;
            inputs["m_bound"] = m_bound;
            print_json(cached_run("search", inputs,
                                  [&] { return run_search(f, height, n_primes, m_bound, jobs); }));
            return 0;
        }

        if (sub_theory->parsed()) {
            print_json(run_theory_bound(g, th_height, c_abs, d_const));
            return 0;
        }

        if (sub_mono->parsed()) {
            using namespace splitscan;
            OJson inputs;
            if (mono_mink->parsed()) {
                inputs["g"] = cap_g;
                print_json(monodromy_json("minkowski", inputs, minkowski_order_bound(cap_g).str()));
                return 0;
            }
            inputs["ell"] = ell;
            inputs["g"] = cap_g;
            if (mono_bh->parsed()) {
                auto ctx = make_symplectic_context(ell, cap_g);
                auto set = make_transvection_set(ctx, parse_lines(lines_str, ell));
                inputs["lines"] = lines_str;
                OJson flags;
                flags["line_count"] = set.lines.size();
                flags["nonspanning_line_cap"] = nonspanning_line_cap(ell, cap_g).str();
                flags["transvection_threshold"] = transvection_threshold(ell, cap_g).str();
                print_json(monodromy_json("bh", inputs, brown_humphries_generates(set), flags));
            } else if (mono_thr->parsed()) {
                print_json(monodromy_json("threshold", inputs,
                                          simple_degeneration_threshold(ell, cap_g).str()));
            } else if (mono_vtr->parsed()) {
                inputs["cap"] = tr_cap;
                auto rep = verify_transvection_lemma(ell, cap_g, tr_cap);
                OJson flags;
                flags["verified"] = rep.verified;
                print_json(monodromy_json("verify-tr", inputs, lemma_report_json(rep), flags));
            } else if (mono_gb->parsed()) {
                inputs["m"] = gb_m;
                inputs["index"] = gb_index;
                inputs["base_genus"] = gb_base_genus;
                auto res = genus_lower_bound(ell, cap_g, gb_m, gb_index, gb_base_genus);
                OJson flags;
                flags["positivity"] = res.positivity;
                print_json(monodromy_json("genus-bound", inputs, fraction_json(res.bound), flags));
            } else if (mono_ratio->parsed()) {
                print_json(monodromy_json("ratio", inputs,
                                          fraction_json(conjugacy_ratio_bound(ell, cap_g))));
            } else if (mono_deg->parsed()) {
                OJson value;
                value["degeneration_threshold"] = simple_degeneration_threshold(ell, cap_g).str();
                value["transvection_threshold"] = transvection_threshold(ell, cap_g).str();
                value["nonspanning_line_cap"] = nonspanning_line_cap(ell, cap_g).str();
                value["conjugacy_ratio"] = fraction_json(conjugacy_ratio_bound(ell, cap_g));
                value["group_order"] = sp_order(ell, cap_g).str();
                print_json(monodromy_json("degeneration", inputs, value));
            }
            return 0;
        }

        std::cerr << app.help() << "\n";
        return 2;
    } catch (const splitscan::resource_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const splitscan::precondition_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
