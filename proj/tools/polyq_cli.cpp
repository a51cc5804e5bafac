// polyq: command-line frontend for exact Fermat/polynomial-quotient statistics.
//
// Exit codes: 0 success, 1 verify found a counterexample, 2 invalid
// arguments, 3 computational cap exceeded. Diagnostics go to stderr only.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyq/charsum.hpp"
#include "polyq/funcfield.hpp"
#include "polyq/quotient.hpp"
#include "polyq/spectrum.hpp"
#include "polyq/verifier.hpp"
#include "polyq/waring.hpp"

using json = nlohmann::ordered_json;
using namespace polyq;

namespace {

double round9(double x) { return std::round(x * 1e9) / 1e9; }

json bigint_json(const BigInt& v) {
    static const BigInt max_safe = (BigInt(1) << 53) - 1;
    if (v <= max_safe) return json(static_cast<u64>(v));
    return json(v.str());
}

json optional_json(const std::optional<u64>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string wire_format(const std::vector<u64>& coeffs) {
    if (coeffs.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(coeffs[i]);
    }
    return out;
}

std::vector<u64> parse_u64_list(const std::string& text) {
    std::vector<u64> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("bad integer list item: '" + item + "'");
        }
        out.push_back(std::stoull(item));
        pos = comma + 1;
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
    file << text;
}

// key,value flattening for scalar outputs in csv mode
std::string kv_csv(const json& j) {
    std::string out = "key,value\n";
    for (const auto& [key, value] : j.items()) {
        out += key + "," + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    }
    return out;
}

std::string vector_csv(const char* head, const json& pairs) {
    std::string out = std::string(head) + "\n";
    for (const auto& row : pairs) {
        out += row[0].dump() + "," + (row[1].is_string() ? row[1].get<std::string>() : row[1].dump());
        out += "\n";
    }
    return out;
}

IdentityGrid identity_grid_preset(const std::string& name) {
    if (name.empty() || name == "default") return {};
    if (name == "small") {
        IdentityGrid g;
        g.two_path_max_prime = 13;
        g.homomorphism_max_prime = 19;
        g.homomorphism_pairs = 1000;
        g.addition_law_max_prime = 13;
        g.binomial_max_prime = 31;
        g.lemma1_max_prime = 61;
        g.theorem3_max_prime = 31;
        g.waring_max_prime = 31;
        g.waring_remark_max_prime = 61;
        g.charsum_primes = {5, 101};
        return g;
    }
    throw std::invalid_argument("unknown identity grid preset: '" + name + "'");
}

SweepGrid sweep_grid_parse(const std::string& text) {
    if (text.empty() || text == "default") return {};
    if (text == "small") {
        SweepGrid g;
        g.primes = {101};
        return g;
    }
    // explicit form: p=101,257;w=1,2,p-1;n=p/2,p
    SweepGrid g;
    bool saw_p = false, saw_w = false, saw_n = false;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t semi = std::min(text.find(';', pos), text.size());
        const std::string part = text.substr(pos, semi - pos);
        const size_t eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad grid part: '" + part + "'");
        const std::string key = part.substr(0, eq);
        const std::string list = part.substr(eq + 1);
        std::vector<std::string> items;
        size_t ipos = 0;
        while (ipos <= list.size()) {
            const size_t comma = std::min(list.find(',', ipos), list.size());
            items.push_back(list.substr(ipos, comma - ipos));
            ipos = comma + 1;
        }
        if (items.empty() || items.front().empty()) {
            throw std::invalid_argument("empty grid list for '" + key + "'");
        }
        if (key == "p") {
            g.primes.clear();
            for (const auto& item : items) g.primes.push_back(std::stoull(item));
            saw_p = true;
        } else if (key == "w") {
            g.w_tokens = items;
            saw_w = true;
        } else if (key == "n" || key == "N") {
            g.n_tokens = items;
            saw_n = true;
        } else {
            throw std::invalid_argument("unknown grid key: '" + key + "'");
        }
        pos = semi + 1;
    }
    if (!saw_p && !saw_w && !saw_n) throw std::invalid_argument("empty sweep grid spec");
    return g;
}

struct Flags {
    u64 p = 0;
    u64 w = 0;
    u64 n = 0;
    u64 u = 0;
    u64 s = 1;
    long long a = -1;
    u64 r = 1;
    std::string poly;
    std::string conductor;
    std::string modulus;
    int theorem = 0;
    std::string grid;
    std::string suite = "all";
    std::string format = "json";
    std::string out;
};

void add_output_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--format", f.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_str("json");
    cmd->add_option("--out", f.out, "Write output to a file instead of stdout");
}

void lemma2_ratio_json(const PrimeContext& ctx, u64 w, u64 N, double max_nontrivial, json& target) {
    // report-only shape of the character-sum bound: N^{1/2} p^{11/8} / gcd(w, p-1)
    if (w % ctx.p() == 0) {
        target = nullptr;
        return;
    }
    const u64 w_eff = w < ctx.p() ? w : reduce_exponent(ctx, w).w1;
    const double bound = std::sqrt(static_cast<double>(N)) *
                         std::pow(static_cast<double>(ctx.p()), 11.0 / 8) /
                         static_cast<double>(gcd_u64(w_eff, ctx.p() - 1));
    target = round9(max_nontrivial / bound);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact statistics of Fermat and polynomial quotients"};
    app.require_subcommand(1);
    Flags f;

    auto* eval = app.add_subcommand("eval", "single quotient value q_{p,w}(u)");
    eval->add_option("--p", f.p)->required();
    eval->add_option("--w", f.w)->required();
    eval->add_option("--u", f.u)->required();
    add_output_flags(eval, f);

    auto* batch = app.add_subcommand("batch", "q_{p,w}(u) for u = 0..N-1");
    batch->add_option("--p", f.p)->required();
    batch->add_option("--w", f.w)->required();
    batch->add_option("--n", f.n)->required();
    add_output_flags(batch, f);

    auto* valueset = app.add_subcommand("valueset", "value set and frequency vector on [0, N)");
    valueset->add_option("--p", f.p)->required();
    valueset->add_option("--w", f.w)->required();
    valueset->add_option("--n", f.n)->required();
    add_output_flags(valueset, f);

    auto* interp = app.add_subcommand("interp", "count of u < N with q_{p,w}(u) = f(u)");
    interp->add_option("--p", f.p)->required();
    interp->add_option("--w", f.w)->required();
    interp->add_option("--n", f.n)->required();
    interp->add_option("--poly", f.poly, "ascending coefficients, e.g. 0,1 for f(x)=x")->required();
    add_output_flags(interp, f);

    auto* fixed = app.add_subcommand("fixed", "fixed points of q_{p,w} on [0, N)");
    fixed->add_option("--p", f.p)->required();
    fixed->add_option("--w", f.w)->required();
    fixed->add_option("--n", f.n)->required();
    add_output_flags(fixed, f);

    auto* waring = app.add_subcommand("waring", "Waring number and sumset trajectory");
    waring->add_option("--p", f.p)->required();
    waring->add_option("--w", f.w)->required();
    waring->add_option("--n", f.n)->required();
    add_output_flags(waring, f);

    auto* repcount = app.add_subcommand("repcount", "exact representation counts N_s(y)");
    repcount->add_option("--p", f.p)->required();
    repcount->add_option("--w", f.w)->required();
    repcount->add_option("--n", f.n)->required();
    repcount->add_option("--s", f.s)->required();
    add_output_flags(repcount, f);

    auto* charsum = app.add_subcommand("charsum", "additive character sum magnitudes");
    charsum->add_option("--p", f.p)->required();
    charsum->add_option("--w", f.w)->required();
    charsum->add_option("--n", f.n)->required();
    charsum->add_option("--a", f.a, "report a single character index")
        ->check(CLI::NonNegativeNumber);
    add_output_flags(charsum, f);

    auto* classes = app.add_subcommand("classes", "cyclotomic classes of size gcd(w, p-1)");
    classes->add_option("--p", f.p)->required();
    classes->add_option("--w", f.w)->required();
    add_output_flags(classes, f);

    auto* ell = app.add_subcommand("ell", "smallest u with q_{p,w}(u) != 0");
    ell->add_option("--p", f.p)->required();
    ell->add_option("--w", f.w)->required();
    add_output_flags(ell, f);

    auto* lambda = app.add_subcommand("lambda", "smallest L with {q_p(1..L)} = F_p");
    lambda->add_option("--p", f.p)->required();
    add_output_flags(lambda, f);

    auto* primehist = app.add_subcommand("primehist", "histogram of q_p over primes l < N");
    primehist->add_option("--p", f.p)->required();
    primehist->add_option("--n", f.n)->required();
    add_output_flags(primehist, f);

    auto* ff = app.add_subcommand("ff", "function-field quotients over F_q[X]/(P)");
    ff->add_option("--p", f.p)->required();
    ff->add_option("--r", f.r, "extension degree of F_q = F_{p^r}");
    ff->add_option("--n", f.n, "degree of P when --modulus is absent");
    ff->add_option("--w", f.w, "exponent w (default 1)");
    ff->add_option("--conductor", f.conductor, "conductor polynomial over F_p");
    ff->add_option("--modulus", f.modulus, "irreducible P over F_q (wire format)");
    ff->add_option("--poly", f.poly, "evaluate q_{P,w} at this A instead of sweeping");
    add_output_flags(ff, f);

    auto* verify = app.add_subcommand("verify", "run identity suites");
    verify->add_option("--suite", f.suite, "suite name or 'all'");
    verify->add_option("--grid", f.grid, "grid preset: default|small");
    add_output_flags(verify, f);

    auto* sweep = app.add_subcommand("sweep", "bound-shape ratio reports for theorems 1-6");
    sweep->add_option("--theorem", f.theorem)->required()->check(CLI::Range(1, 6));
    sweep->add_option("--grid", f.grid, "default|small|p=..;w=..;n=..");
    sweep->add_option("--poly", f.poly, "replace the theorem-1 polynomial family with one f");
    add_output_flags(sweep, f);

    try {
        app.parse(argc, argv);

        const bool csv = f.format == "csv";
        json j;

        if (eval->parsed()) {
            const PrimeContext ctx(f.p);
            j["p"] = f.p;
            j["w"] = f.w;
            j["u"] = f.u;
            j["q"] = poly_quotient(ctx, f.w, f.u);
            emit(csv ? kv_csv(j) : j.dump() + "\n", f.out);
        } else if (batch->parsed()) {
            const PrimeContext ctx(f.p);
            const auto values = batch_quotients(ctx, f.w, f.n);
            if (csv) {
                json rows = json::array();
                for (u64 u = 0; u < values.size(); ++u) rows.push_back({u, values[u]});
                emit(vector_csv("u,q", rows), f.out);
            } else {
                j["p"] = f.p;
                j["w"] = f.w;
                j["n"] = f.n;
                j["values"] = values;
                emit(j.dump() + "\n", f.out);
            }
        } else if (valueset->parsed()) {
            const PrimeContext ctx(f.p);
            const auto prof = value_profile(ctx, f.w, f.n);
            if (csv) {
                json rows = json::array();
                for (u64 v : prof.values()) rows.push_back({v, prof.freq[v]});
                emit(vector_csv("value,freq", rows), f.out);
            } else {
                j["p"] = f.p;
                j["w"] = f.w;
                j["n"] = f.n;
                j["v"] = prof.value_count;
                j["values"] = prof.values();
                j["freq"] = prof.freq;
                emit(j.dump() + "\n", f.out);
            }
        } else if (interp->parsed()) {
            const PrimeContext ctx(f.p);
            const auto fx = PolyOverFp::make(parse_u64_list(f.poly), f.p);
            j["p"] = f.p;
            j["w"] = f.w;
            j["n"] = f.n;
            j["poly"] = wire_format(fx.coeffs);
            j["count"] = interpolation_count(ctx, f.w, f.n, fx);
            emit(csv ? kv_csv(j) : j.dump() + "\n", f.out);
        } else if (fixed->parsed()) {
            const PrimeContext ctx(f.p);
            j["p"] = f.p;
            j["w"] = f.w;
            j["n"] = f.n;
            j["count"] = fixed_points(ctx, f.w, f.n);
            emit(csv ? kv_csv(j) : j.dump() + "\n", f.out);
        } else if (waring->parsed()) {
            const PrimeContext ctx(f.p);
            const auto traj = waring_number(ctx, f.w, f.n);
            j["g"] = traj.g ? json(*traj.g) : json("infinite");
            j["p"] = f.p;
            j["w"] = f.w;
            j["n"] = f.n;
            j["sizes"] = traj.sizes;
            j["ell"] = optional_json(traj.ell);
            if (csv) {
                json flat = j;
                flat["sizes"] = wire_format(traj.sizes);
                emit(kv_csv(flat), f.out);
            } else {
                emit(j.dump() + "\n", f.out);
            }
        } else if (repcount->parsed()) {
            const PrimeContext ctx(f.p);
            const auto rep = representation_counts(ctx, f.w, f.n, f.s);
            if (csv) {
                json rows = json::array();
                for (u64 y = 0; y < rep.counts.size(); ++y) {
                    rows.push_back({y, bigint_json(rep.counts[y])});
                }
                emit(vector_csv("y,count", rows), f.out);
            } else {
                j["p"] = f.p;
                j["w"] = f.w;
                j["n"] = f.n;
                j["s"] = f.s;
                json counts = json::array();
                for (const auto& c : rep.counts) counts.push_back(bigint_json(c));
                j["counts"] = counts;
                j["total"] = bigint_json(rep.total());
                emit(j.dump() + "\n", f.out);
            }
        } else if (charsum->parsed()) {
            const PrimeContext ctx(f.p);
            const auto prof = character_sum_profile(ctx, f.w, f.n);
            if (f.a >= 0) {
                if (static_cast<u64>(f.a) >= f.p) {
                    throw std::invalid_argument("character index a must lie in [0, p)");
                }
                j["p"] = f.p;
                j["w"] = f.w;
                j["n"] = f.n;
                j["a"] = static_cast<u64>(f.a);
                j["magnitude"] = round9(prof.magnitudes[static_cast<u64>(f.a)]);
                emit(csv ? kv_csv(j) : j.dump() + "\n", f.out);
            } else if (csv) {
                json rows = json::array();
                for (u64 a = 0; a < prof.magnitudes.size(); ++a) {
                    rows.push_back({a, round9(prof.magnitudes[a])});
                }
                emit(vector_csv("a,magnitude", rows), f.out);
            } else {
                j["p"] = f.p;
                j["w"] = f.w;
                j["n"] = f.n;
                j["max_nontrivial"] = round9(prof.max_nontrivial);
                lemma2_ratio_json(ctx, f.w, f.n, prof.max_nontrivial, j["lemma2_ratio"]);
                json mags = json::array();
                for (double m : prof.magnitudes) mags.push_back(round9(m));
                j["magnitudes"] = mags;
                emit(j.dump() + "\n", f.out);
            }
        } else if (classes->parsed()) {
            const PrimeContext ctx(f.p);
            const u64 d = gcd_u64(f.w, f.p - 1);
            const auto cls = cyclotomic_classes(ctx, d);
            if (csv) {
                json rows = json::array();
                for (u64 i = 0; i < cls.size(); ++i) {
                    std::string members;
                    for (size_t k = 0; k < cls[i].size(); ++k) {
                        if (k) members += '|';
                        members += std::to_string(cls[i][k]);
                    }
                    rows.push_back({i, members});
                }
                emit(vector_csv("class,members", rows), f.out);
            } else {
                j["p"] = f.p;
                j["w"] = f.w;
                j["d"] = d;
                j["gamma"] = ctx.gamma();
                j["classes"] = cls;
                emit(j.dump() + "\n", f.out);
            }
        } else if (ell->parsed()) {
            const PrimeContext ctx(f.p);
            j["p"] = f.p;
            j["w"] = f.w;
            j["ell"] = optional_json(smallest_nonzero(ctx, f.w));
            emit(csv ? kv_csv(j) : j.dump() + "\n", f.out);
        } else if (lambda->parsed()) {
            const PrimeContext ctx(f.p);
            j["p"] = f.p;
            j["lambda"] = lambda_p(ctx);
            emit(csv ? kv_csv(j) : j.dump() + "\n", f.out);
        } else if (primehist->parsed()) {
            const PrimeContext ctx(f.p);
            const auto hist = prime_quotient_histogram(ctx, f.n);
            if (csv) {
                json rows = json::array();
                for (u64 a = 0; a < hist.counts.size(); ++a) rows.push_back({a, hist.counts[a]});
                emit(vector_csv("a,count", rows), f.out);
            } else {
                j["p"] = f.p;
                j["n"] = f.n;
                j["pi"] = hist.prime_count;
                j["counts"] = hist.counts;
                emit(j.dump() + "\n", f.out);
            }
        } else if (ff->parsed()) {
            const u64 w = f.w == 0 ? 1 : f.w;
            const Fq base(f.p, 1);
            std::vector<u64> conductor;
            if (f.r > 1) {
                conductor = f.conductor.empty() ? find_irreducible(base, f.r)
                                                : fq_poly_parse(base, f.conductor);
            } else if (!f.conductor.empty()) {
                throw std::invalid_argument("conductor is only meaningful for r > 1");
            }
            const Fq F = f.r == 1 ? base : Fq(f.p, f.r, conductor);
            const FqPoly P = f.modulus.empty() ? find_irreducible(F, f.n == 0 ? 2 : f.n)
                                               : fq_poly_parse(F, f.modulus);
            const FieldRing ring(F, P);
            j["p"] = f.p;
            j["r"] = f.r;
            j["q"] = F.q();
            j["n"] = ring.degree();
            j["conductor"] = f.r > 1 ? json(wire_format(conductor)) : json(nullptr);
            j["modulus"] = fq_poly_format(F, P);
            j["w"] = w;
            if (!f.poly.empty()) {
                const FqPoly A = fq_poly_parse(F, f.poly);
                const auto quot = ring.quotient(A, w);
                j["a"] = fq_poly_format(F, A);
                j["quotient"] = fq_poly_format(F, quot.value);
                j["zero_map"] = quot.zero_map;
            } else {
                const auto stats = image_kernel_stats(ring, w);
                j["image_size"] = stats.image_size;
                j["zero_fiber_size"] = stats.zero_fiber_size;
                j["relation_ok"] = stats.relation_ok;
                const u64 qn1 = ring.size() - 1;
                const u64 kdim = (ring.degree() + f.p - 1) / f.p;
                u64 qk = 1;
                for (u64 i = 0; i < kdim; ++i) qk *= F.q();
                const double b1 = static_cast<double>(gcd_u64(w, qn1)) /
                                  (static_cast<double>(F.q()) * ring.degree() * ring.degree());
                const double b2 = static_cast<double>(gcd_u64(w - 1, qn1)) / static_cast<double>(qk);
                const double b3 = static_cast<double>(qk) / static_cast<double>(gcd_u64(w - 1, qn1));
                json bounds = json::array();
                const char* names[] = {"gcd(w,q^n-1)/(q*n^2)", "gcd(w-1,q^n-1)/q^ceil(n/p)",
                                       "q^ceil(n/p)/gcd(w-1,q^n-1)"};
                const double vals[] = {b1, b2, b3};
                for (int i = 0; i < 3; ++i) {
                    json entry;
                    entry["bound"] = names[i];
                    entry["value"] = round9(vals[i]);
                    entry["ratio"] =
                        vals[i] > 0 ? json(round9(stats.image_size / vals[i])) : json(nullptr);
                    bounds.push_back(std::move(entry));
                }
                j["image_bounds"] = bounds;
            }
            emit(csv ? kv_csv(j) : j.dump() + "\n", f.out);
        } else if (verify->parsed()) {
            const auto results = run_identity_suite(identity_grid_preset(f.grid), {}, f.suite);
            bool all_passed = true;
            json suites = json::array();
            for (const auto& res : results) {
                all_passed = all_passed && res.passed;
                json entry;
                entry["suite"] = res.suite;
                entry["checks"] = res.checks;
                entry["passed"] = res.passed;
                entry["witness"] = res.witness;
                suites.push_back(std::move(entry));
            }
            j["passed"] = all_passed;
            j["suites"] = suites;
            if (csv) {
                std::string out = "suite,checks,passed,witness\n";
                for (const auto& res : results) {
                    out += res.suite + "," + std::to_string(res.checks) + "," +
                           (res.passed ? "true" : "false") + "," + res.witness + "\n";
                }
                emit(out, f.out);
            } else {
                emit(j.dump() + "\n", f.out);
            }
            return all_passed ? 0 : 1;
        } else if (sweep->parsed()) {
            SweepGrid grid = sweep_grid_parse(f.grid);
            if (!f.poly.empty()) grid.poly_family = {parse_u64_list(f.poly)};
            const auto report = run_bound_sweep(f.theorem, grid);
            emit(csv ? report.to_csv() : report.to_json() + "\n", f.out);
            if (report.limit_hit) {
                std::cerr << "error: some grid points exceeded caps; report is partial\n";
                return 3;
            }
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const std::string name = e.get_name();
        if (name == "CallForHelp" || name == "CallForAllHelp" || name == "CallForVersion") {
            return app.exit(e);
        }
        app.exit(e);
        return 2;
    } catch (const LimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
