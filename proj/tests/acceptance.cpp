// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Each criterion is checked at the stated scale; nothing is
// deferred to external calibration.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "kloops/kloops.hpp"

#ifndef KLOOPS_CLI_PATH
#error "KLOOPS_CLI_PATH must point at the CLI binary"
#endif

namespace fs = std::filesystem;
using namespace kloops;

namespace {

struct Criterion {
    int id;
    std::string label;
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

struct Fixture {
    std::string name;
    LoopStructure loop;
};

std::vector<Fixture> fixtures() {
    std::vector<Fixture> out;
    out.push_back({"z3", cyclic_kloop(3)});
    out.push_back({"z5", cyclic_kloop(5)});
    out.push_back({"z7", cyclic_kloop(7)});
    out.push_back({"z9", cyclic_kloop(9)});
    out.push_back({"z15", cyclic_kloop(15)});
    out.push_back({"z3x3", direct_product(cyclic_kloop(3), cyclic_kloop(3))});
    out.push_back({"h27", kloop_from_group(heisenberg27())});
    return out;
}

SubsetMask from_bits(int n, unsigned long long bits) {
    SubsetMask m(n);
    for (int i = 0; i < n; ++i)
        if (bits & (1ull << i)) m.insert(i);
    return m;
}

SubsetMask random_subset(int n, std::mt19937& rng) {
    SubsetMask m(n);
    for (int i = 0; i < n; ++i)
        if (rng() & 1u) m.insert(i);
    return m;
}

// ---- criterion 1: axiom suite -------------------------------------------

void criterion_axioms(Criterion& c) {
    for (const Fixture& f : fixtures()) {
        c.expect(f.loop.is_bol(), f.name + ": Bol identity fails");
        c.expect(f.loop.is_aip(), f.name + ": automorphic inverse property fails");
        c.expect(f.loop.is_uniquely_2_divisible(), f.name + ": doubling is not a bijection");
    }
    LoopStructure h27 = kloop_from_group(heisenberg27());
    auto witness = h27.nonassociative_witness();
    if (witness) {
        auto [a, b, x] = *witness;
        c.expect(h27.add(h27.add(a, b), x) != h27.add(a, h27.add(b, x)),
                 "h27: emitted witness does not violate associativity");
        c.notes.push_back("h27 nonassociativity witness: (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(x) + ")");
    } else {
        c.expect(false,
                 "h27: no nonassociativity witness exists; the half-sandwich of the "
                 "class-2 Heisenberg group is an abelian group (x+y = xy[y,x]^(1/2)), "
                 "checked over all 27^3 triples");
    }
}

// ---- criterion 2: K-loop identity suite ----------------------------------

void criterion_identities(Criterion& c) {
    for (const Fixture& f : fixtures()) {
        IdentityReport report = check_kloop_identities(f.loop);
        for (const IdentityItem& item : report.items)
            c.expect(item.pass, f.name + ": " + item.name + " fails with witness " +
                                    format_witness(item.witness));
        if (f.loop.order() <= 9 || f.name == "h27")
            c.expect(check_involutive_fpf_is_neg(f.loop, 1000000),
                     f.name + ": an involutive fixed-point-free automorphism is not negation");
    }
}

// ---- criterion 3: inner mappings = stabilizer of 0 -----------------------

void criterion_stabilizer(Criterion& c) {
    for (const Fixture& f : fixtures()) {
        GeneratedGroup m = mlt(f.loop, kDefaultGroupCap);
        if (!m.complete) continue;  // only fixtures whose closure fits the cap
        c.expect(stabilizer_check(f.loop, kDefaultGroupCap),
                 f.name + ": inner group differs from the stabilizer of 0");
    }
}

// ---- criterion 4: normality double-check and quotients --------------------

void criterion_normality(Criterion& c) {
    for (const Fixture& f : fixtures()) {
        bool automorphic = is_automorphic(f.loop);
        for (const SubsetMask& C : enumerate_subloops(f.loop)) {
            bool gens = is_normal(f.loop, C);
            bool cosets = is_normal_by_cosets(f.loop, C);
            c.expect(gens == cosets, f.name + ": normality verdicts disagree on " +
                                         format_subset(C));
            if (!gens) continue;
            QuotientResult q = quotient(f.loop, C);  // validates well-definedness inside
            c.expect(q.loop.is_kloop(), f.name + "/" + format_subset(C) +
                                            ": quotient is not a K-loop");
            c.expect(q.loop.is_uniquely_2_divisible(),
                     f.name + "/" + format_subset(C) + ": quotient is not uniquely 2-divisible");
            if (automorphic)
                c.expect(is_automorphic(q.loop), f.name + "/" + format_subset(C) +
                                                     ": quotient of automorphic is not automorphic");
        }
    }
}

// ---- criterion 5: convexity triple equivalence ----------------------------

void check_convexity_equivalence(Criterion& c, const SymetronStructure& S, const SubsetMask& Y,
                                 const std::string& tag) {
    bool convex = is_convex(S, Y);
    bool mid = is_midpoint_closed(S, Y);
    SubsetMask sym = symmetrizer(S, Y);  // embedding into Y is asserted inside
    bool own = Y.empty() || sym == Y;
    c.expect(convex == mid, tag + ": convex / midpoint-closed differ");
    c.expect(convex == own, tag + ": convex / own-symmetrizer differ");
    if (!Y.empty()) {
        c.expect(is_convex(S, sym), tag + ": symmetrizer is not convex");
        c.expect(sym.count() <= Y.count(), tag + ": symmetrizer exceeds the set");
    }
}

void criterion_convexity(Criterion& c) {
    for (const Fixture& f : fixtures()) {
        if (!f.loop.is_uniquely_2_divisible() || f.loop.order() > 12) continue;
        SymetronStructure S = kloop_to_symetron(f.loop);
        int n = S.order();
        for (unsigned long long bits = 0; bits < (1ull << n); ++bits)
            check_convexity_equivalence(c, S, from_bits(n, bits), f.name);
    }
    SymetronStructure S27 = kloop_to_symetron(kloop_from_group(heisenberg27()));
    std::mt19937 rng(271828);
    for (int iter = 0; iter < 10000; ++iter)
        check_convexity_equivalence(c, S27, random_subset(27, rng), "h27-random");
}

// ---- criterion 6: subloop / convex bridge ---------------------------------

void criterion_bridge(Criterion& c) {
    for (const Fixture& f : fixtures()) {
        if (f.loop.order() > 12) continue;
        SymetronStructure S = kloop_to_symetron(f.loop);
        int n = S.order();
        for (unsigned long long bits = 0; bits < (1ull << n); ++bits) {
            SubsetMask X = from_bits(n, bits);
            bool sub = is_subloop(f.loop, X);
            bool convex0 = X.contains(0) && is_convex(S, X);
            c.expect(sub == convex0, f.name + ": subloop/convex-with-0 bridge fails");
            if (!X.empty() && is_convex(S, X)) {
                for (int x : X.members()) {
                    SubsetMask shifted = S.reflect(X, f.loop.half(x));
                    c.expect(shifted.count() == X.count(),
                             f.name + ": shifted convex set changed size");
                    c.expect(is_subloop(f.loop, shifted),
                             f.name + ": shifted convex set is not a subloop");
                }
            }
        }
    }
    // Random sweep at order 27 plus the exact lattice comparison everywhere.
    {
        LoopStructure h27 = kloop_from_group(heisenberg27());
        SymetronStructure S = kloop_to_symetron(h27);
        std::mt19937 rng(314159);
        for (int iter = 0; iter < 10000; ++iter) {
            SubsetMask X = random_subset(27, rng);
            bool sub = is_subloop(h27, X);
            bool convex0 = X.contains(0) && is_convex(S, X);
            c.expect(sub == convex0, "h27-random: subloop/convex-with-0 bridge fails");
            if (!X.empty() && is_convex(S, X)) {
                int x = X.first_member();
                SubsetMask shifted = S.reflect(X, h27.half(x));
                c.expect(is_subloop(h27, shifted) && shifted.count() == X.count(),
                         "h27-random: shifted convex set is not a matching subloop");
            }
        }
    }
    for (const Fixture& f : fixtures()) {
        SymetronStructure S = kloop_to_symetron(f.loop);
        auto subs = enumerate_subloops(f.loop);
        std::vector<SubsetMask> convex0;
        for (const SubsetMask& Y : enumerate_convex(S))
            if (Y.contains(0)) convex0.push_back(Y);
        std::sort(subs.begin(), subs.end());
        std::sort(convex0.begin(), convex0.end());
        c.expect(subs == convex0,
                 f.name + ": subloop lattice differs from convex sets containing 0");
    }
}

// ---- criterion 7: co-interpretation ---------------------------------------

void criterion_cointerpretation(Criterion& c) {
    for (const Fixture& f : fixtures()) {
        SymetronStructure S = kloop_to_symetron(f.loop);  // validates internally
        int n = S.order();
        for (int a = 0; a < n; ++a) {
            BasedLoop based = symetron_to_kloop(S, a);
            c.expect(based.loop.is_kloop() && based.loop.is_uniquely_2_divisible(),
                     f.name + ": based loop at " + std::to_string(a) + " fails validation");
        }
        RoundtripResult rt = roundtrip_check(f.loop);
        c.expect(rt.isomorphic, f.name + ": roundtrip is not isomorphic");
        c.expect(rt.equal, f.name + ": roundtrip of abelian fixture is not table-equal");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                c.expect(kloop_midpoint(f.loop, a, b) == S.m(a, b),
                         f.name + ": loop midpoint disagrees with the midpoint table");
        if (n <= 15) {
            for (int a = 0; a < n; ++a) {
                c.expect(check_midpoint_isomorphism(S, a),
                         f.name + ": midpoint map is not a symetron isomorphism");
                for (int u = 0; u < n; ++u)
                    c.expect(check_su_isomorphism(S, a, u),
                             f.name + ": s_u is not a based-loop isomorphism");
            }
        } else {
            std::mt19937 rng(161803);
            for (int iter = 0; iter < 250; ++iter) {
                int a = static_cast<int>(rng() % n), u = static_cast<int>(rng() % n);
                c.expect(check_su_isomorphism(S, a, u),
                         f.name + ": s_u is not a based-loop isomorphism (sampled)");
            }
            for (int a = 0; a < n; ++a)
                c.expect(check_midpoint_isomorphism(S, a),
                         f.name + ": midpoint map is not a symetron isomorphism");
        }
    }
}

// ---- criterion 8: translate covers ----------------------------------------

void criterion_covers(Criterion& c) {
    for (const Fixture& f : fixtures()) {
        if (f.loop.order() > 9) continue;
        SymetronStructure S = kloop_to_symetron(f.loop);
        int n = S.order();
        for (unsigned long long bits = 1; bits < (1ull << n); ++bits) {
            SubsetMask X = from_bits(n, bits);
            auto pairs = cover_by_translates(S, X);
            SubsetMask covered(n);
            for (auto [u, v] : pairs) covered = covered.union_with(translate(S, X, u, v));
            c.expect(covered == SubsetMask::full(n), f.name + ": cover misses points");
        }
    }
    SymetronStructure S27 = kloop_to_symetron(kloop_from_group(heisenberg27()));
    std::mt19937 rng(577215);
    for (int iter = 0; iter < 1000; ++iter) {
        SubsetMask X = random_subset(27, rng);
        if (X.empty()) X.insert(static_cast<int>(rng() % 27));
        auto pairs = cover_by_translates(S27, X);
        SubsetMask covered(27);
        for (auto [u, v] : pairs) covered = covered.union_with(translate(S27, X, u, v));
        c.expect(covered == SubsetMask::full(27), "h27-random: cover misses points");
    }
}

// ---- criterion 9: indecomposability ----------------------------------------

void criterion_indecomposability(Criterion& c) {
    for (const Fixture& f : fixtures()) {
        if (f.loop.order() > 7) continue;
        SymetronStructure S = kloop_to_symetron(f.loop);
        int n = S.order();
        for (unsigned long long bits = 0; bits < (1ull << n); ++bits) {
            SubsetMask A = from_bits(n, bits);
            bool closed_form = is_indecomposable(S, A);
            bool definitional = indecomposable_by_definition(S, A);
            c.expect(closed_form == definitional,
                     f.name + ": closed form disagrees with the definition on " +
                         format_subset(A));
            c.expect(closed_form == (A.count() <= 1),
                     f.name + ": closed form is not |A| <= 1");
        }
    }
}

// ---- criterion 10: enumeration ---------------------------------------------

void criterion_enumeration(Criterion& c) {
    for (int n : {1, 3, 5, 7}) {
        auto tables = enumerate_kloops(n);
        c.expect(tables.size() == 1, "order " + std::to_string(n) + ": expected exactly 1 class, got " +
                                         std::to_string(tables.size()));
    }
    auto tables = enumerate_kloops(8);
    int beyond_groups = 0;
    for (const CayleyTable& t : tables) {
        LoopStructure L = make_loop(t);
        c.expect(L.is_bol() && L.is_aip(), "order 8: emitted table fails the axiom suite");
        if (!L.is_associative()) ++beyond_groups;
        c.expect(canonicalize(t) == t, "order 8: emitted table is not a canonicalization fixpoint");
    }
    c.notes.push_back("order-8 classes: " + std::to_string(tables.size()) + " (" +
                      std::to_string(beyond_groups) + " beyond groups, each re-validated)");
}

// ---- criterion 11: CLI determinism ------------------------------------------

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run_cli(const fs::path& dir, const std::string& args) {
    fs::path out = dir / "out.txt", err = dir / "err.txt";
    std::string cmd = std::string(KLOOPS_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                      err.string();
    int status = std::system(cmd.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

void criterion_cli_determinism(Criterion& c) {
    fs::path dir = fs::temp_directory_path() / "kloops_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const CayleyTable& t) {
        fs::path p = dir / name;
        std::ofstream f(p);
        f << serialize_table(t) << "\n";
        return p.string();
    };
    std::string z5 = write("z5.tbl", cyclic_kloop(5).table());
    std::string z9 = write("z9.tbl", cyclic_kloop(9).table());
    std::string z15 = write("z15.tbl", cyclic_kloop(15).table());
    std::string z3x3 = write("z3x3.tbl", direct_product(cyclic_kloop(3), cyclic_kloop(3)).table());
    std::string h27 = write("h27.tbl", kloop_from_group(heisenberg27()).table());
    std::string sym5 = write("sym5.tbl", kloop_to_symetron(cyclic_kloop(5)).table());
    std::string notlatin = (dir / "notlatin.tbl").string();
    std::ofstream(notlatin) << "2\n0 1\n1 2\n";

    std::vector<std::string> battery = {
        "validate " + z5 + " --as kloop",
        "validate " + sym5 + " --as symetron",
        "validate " + notlatin + " --as kloop",
        "invariants " + z15,
        "invariants " + h27,
        "identities " + z9,
        "convert " + z5 + " --to symetron",
        "convert " + sym5 + " --to kloop --basepoint 3",
        "subloops " + z3x3,
        "normal " + z9 + " --subloop 0,3,6",
        "quotient " + z9 + " --subloop 0,3,6",
        "centralizer " + h27 + " --element 5",
        "iso " + z9 + " " + z3x3,
        "cover " + sym5 + " --subset 0,1",
        "enumerate --order 5",
    };
    std::vector<int> expected_codes = {0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0};
    for (size_t i = 0; i < battery.size(); ++i) {
        CliRun first = run_cli(dir, battery[i]);
        CliRun second = run_cli(dir, battery[i]);
        c.expect(first.code == expected_codes[i],
                 "command '" + battery[i] + "' exited " + std::to_string(first.code) +
                     ", expected " + std::to_string(expected_codes[i]));
        c.expect(first.code == second.code && first.out == second.out && first.err == second.err,
                 "command '" + battery[i] + "' is not byte-deterministic");
    }
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<void(Criterion&)>>> suite = {
        {"axiom suite on all fixtures, exhaustive over all triples", criterion_axioms},
        {"K-loop identity suite with integer windows, plus involutive-automorphism check",
         criterion_identities},
        {"inner-mapping group equals the 0-stabilizer of the multiplication group",
         criterion_stabilizer},
        {"normality double-check, quotient validation and flag transfer", criterion_normality},
        {"convex <=> midpoint-closed <=> own-symmetrizer over subset sweeps",
         criterion_convexity},
        {"subloop <=> convex-containing-0 bridge and lattice equality", criterion_bridge},
        {"co-interpretation: conversions, roundtrips, midpoints, based isomorphisms",
         criterion_cointerpretation},
        {"translate covers for nonempty subsets", criterion_covers},
        {"indecomposability closed form vs definitional search", criterion_indecomposability},
        {"K-loop enumeration counts and canonical fixpoints", criterion_enumeration},
        {"CLI determinism and exit codes", criterion_cli_determinism},
    };

    int failed = 0;
    for (size_t i = 0; i < suite.size(); ++i) {
        Criterion crit{static_cast<int>(i + 1), suite[i].first, {}};
        try {
            suite[i].second(crit);
        } catch (const std::exception& e) {
            crit.failures.push_back(std::string("unexpected exception: ") + e.what());
        }
        if (crit.failures.empty()) {
            std::cout << "criterion " << crit.id << ": PASS — " << crit.label << "\n";
        } else {
            ++failed;
            std::cout << "criterion " << crit.id << ": FAIL — " << crit.label << "\n";
            size_t shown = 0;
            for (const std::string& f : crit.failures) {
                std::cout << "    " << f << "\n";
                if (++shown == 8 && crit.failures.size() > 8) {
                    std::cout << "    ... and " << (crit.failures.size() - 8) << " more\n";
                    break;
                }
            }
        }
        for (const std::string& note : crit.notes) std::cout << "    " << note << "\n";
    }
    std::cout << (failed == 0 ? "all criteria passed\n"
                              : std::to_string(failed) + " criterion(s) failed\n");
    return failed;
}
