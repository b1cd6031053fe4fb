// Acceptance suite: one pass/fail line per criterion, exit 0 only when all
// pass. Each randomized sweep is seeded, and every intermediate result that
// has a naive oracle counterpart is compared against it byte-for-byte.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relcon/relcon.hpp"

using namespace relcon;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct OracleLedger {
    std::size_t image_checks = 0;
    std::size_t minor_checks = 0;
    std::size_t superposition_checks = 0;
    std::size_t mismatches = 0;
} oracle_ledger;

Relation checked_image(const FiniteFunction& f, const Relation& r) {
    Relation fast = image_of_relation(f, r);
    ++oracle_ledger.image_checks;
    if (to_text(fast) != to_text(oracle::image(f, r))) ++oracle_ledger.mismatches;
    return fast;
}

Relation checked_tight_minor(const MinorScheme& h, const std::vector<Relation>& rels,
                             const ExecConfig& cfg) {
    Relation fast = tight_minor_relations(h, rels, cfg);
    ++oracle_ledger.minor_checks;
    if (to_text(fast) != to_text(oracle::tight_minor(h, rels)))
        ++oracle_ledger.mismatches;
    return fast;
}

Constraint checked_tight_minor_constraint(const MinorScheme& h,
                                          const std::vector<Constraint>& cs,
                                          const ExecConfig& cfg) {
    std::vector<Relation> ants, cons;
    for (const Constraint& c : cs) {
        ants.push_back(c.antecedent());
        cons.push_back(c.consequent());
    }
    return Constraint(checked_tight_minor(h, ants, cfg),
                      checked_tight_minor(h, cons, cfg));
}

Relation checked_superposition(const std::vector<Relation>& rels,
                               const std::vector<std::string>& b,
                               const std::vector<std::vector<std::string>>& bs,
                               const LabelSet& labels, const ExecConfig& cfg) {
    Relation fast = general_superposition(rels, b, bs, labels, cfg);
    ++oracle_ledger.superposition_checks;
    if (to_text(fast) != to_text(oracle::superposition(rels, b, bs, labels)))
        ++oracle_ledger.mismatches;
    return fast;
}

// ---- shared random builders (explicit engines, reproducible) -------------

int pick(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

Relation random_relation(std::mt19937_64& rng, const FiniteDomain& d, int arity) {
    std::vector<Tuple> ts;
    for (const Tuple& t : all_tuples(d, arity))
        if (rng() % 2) ts.push_back(t);
    return Relation(arity, d, std::move(ts));
}

FiniteFunction random_function(std::mt19937_64& rng, const FiniteDomain& a,
                               const FiniteDomain& b, int arity) {
    std::uint64_t positions = 1;
    for (int i = 0; i < arity; ++i)
        positions *= static_cast<std::uint64_t>(a.size());
    std::vector<int> table;
    for (std::uint64_t p = 0; p < positions; ++p)
        table.push_back(pick(rng, 0, b.size() - 1));
    return FiniteFunction(arity, a, b, std::move(table));
}

MinorScheme random_scheme(std::mt19937_64& rng, int max_target, int max_indets,
                          int max_family, int max_source) {
    const int target = pick(rng, 1, max_target);
    const int n_indets = pick(rng, 0, max_indets);
    std::vector<std::string> indets;
    for (int v = 0; v < n_indets; ++v) indets.push_back("v" + std::to_string(v));
    const int family = pick(rng, 1, max_family);
    std::vector<std::vector<SchemeEntry>> maps;
    for (int j = 0; j < family; ++j) {
        const int source = pick(rng, 1, max_source);
        std::vector<SchemeEntry> h;
        for (int i = 0; i < source; ++i) {
            const int e = pick(rng, 0, target + n_indets - 1);
            if (e < target)
                h.push_back(SchemeEntry::target(e));
            else
                h.push_back(SchemeEntry::indeterminate(
                    indets[static_cast<std::size_t>(e - target)]));
        }
        maps.push_back(std::move(h));
    }
    return MinorScheme(target, std::move(indets), std::move(maps));
}

const FiniteDomain b2("A", 2);
const FiniteFunction and2(2, b2, b2, {0, 0, 0, 1});
const FiniteFunction nand2(2, b2, b2, {1, 1, 1, 0});
const FiniteFunction id1(1, b2, b2, {0, 1});
const FiniteFunction not1(1, b2, b2, {1, 0});

// ---- criterion 1: satisfaction is preserved by conjunctive minors --------

std::string minor_sweep_transcript(unsigned jobs, std::size_t trials,
                              std::size_t* violations) {
    ExecConfig cfg;
    cfg.jobs = jobs;
    std::mt19937_64 rng(101);
    std::ostringstream transcript;
    std::size_t done = 0;
    while (done < trials) {
        FiniteDomain a("A", pick(rng, 1, 3));
        FiniteDomain b("B", pick(rng, 1, 3));
        MinorScheme h = random_scheme(rng, 3, 2, 3, 3);
        FiniteFunction f = random_function(rng, a, b, pick(rng, 1, 3));
        // build a family the function satisfies: consequents grow from images
        std::vector<Constraint> family;
        for (std::size_t j = 0; j < h.family_size(); ++j) {
            Relation r = random_relation(rng, a, h.source_arity(j));
            Relation s = checked_image(f, r);
            for (const Tuple& t : all_tuples(b, h.source_arity(j)))
                if (!s.contains(t) && rng() % 2)
                    s = s | Relation(s.arity(), b, {t});
            family.push_back(Constraint(std::move(r), std::move(s)));
        }
        bool all_satisfied = true;
        for (const Constraint& c : family)
            if (!satisfies(f, c)) all_satisfied = false;
        if (!all_satisfied) continue; // would be vacuous
        ++done;
        Constraint tight = checked_tight_minor_constraint(h, family, cfg);
        const bool tight_ok = satisfies(f, tight);
        std::vector<Tuple> shrunk;
        for (const Tuple& t : tight.antecedent().tuples())
            if (rng() % 2) shrunk.push_back(t);
        Relation relaxed_r(tight.arity(), a, shrunk);
        Relation relaxed_s = tight.consequent() | random_relation(rng, b,
                                                                  tight.arity());
        const bool relaxed_ok = satisfies(f, Constraint(relaxed_r, relaxed_s));
        if (!tight_ok || !relaxed_ok) ++*violations;
        transcript << to_text(tight, "t" + std::to_string(done))
                   << (tight_ok ? "ok" : "VIOLATION") << " "
                   << (relaxed_ok ? "ok" : "VIOLATION") << "\n";
    }
    return transcript.str();
}

Outcome criterion1(std::string* transcript) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t violations = 0;
    *transcript = minor_sweep_transcript(1, 1000, &violations);
    Outcome out;
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    out.pass = violations == 0 && out.seconds < 60.0;
    out.detail = "1000 non-vacuous trials, " + std::to_string(violations) +
                 " violations";
    return out;
}

// ---- criterion 2: composite schemes equal nested tight minors ------------

Outcome criterion2() {
    const auto start = std::chrono::steady_clock::now();
    ExecConfig cfg;
    std::mt19937_64 rng(202);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        FiniteDomain a("A", pick(rng, 1, 3));
        MinorScheme outer = random_scheme(rng, 3, 2, 3, 3);
        std::vector<MinorScheme> inner;
        std::vector<Relation> leaves, mids;
        for (std::size_t j = 0; j < outer.family_size(); ++j) {
            MinorScheme hj = random_scheme(rng, outer.source_arity(j), 2, 2, 3);
            hj = MinorScheme(outer.source_arity(j), hj.indeterminates(), hj.maps());
            std::vector<Relation> rj;
            for (std::size_t i = 0; i < hj.family_size(); ++i)
                rj.push_back(random_relation(rng, a, hj.source_arity(i)));
            mids.push_back(checked_tight_minor(hj, rj, cfg));
            inner.push_back(hj);
            leaves.insert(leaves.end(), rj.begin(), rj.end());
        }
        MinorScheme composite = compose_schemes(outer, inner);
        if (!(checked_tight_minor(composite, leaves, cfg) ==
              tight_minor_relations(outer, mids, cfg)))
            ++mismatches;
    }
    Outcome out;
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    out.pass = mismatches == 0 && out.seconds < 60.0;
    out.detail = "500 composite instances, " + std::to_string(mismatches) +
                 " mismatches";
    return out;
}

// ---- criterion 3: every non-member is constructively separated -----------

std::string roundtrip_transcript(unsigned jobs, std::size_t* failures) {
    ExecConfig cfg;
    cfg.jobs = jobs;
    std::ostringstream transcript;
    const std::vector<std::pair<std::string, FunctionClass>> classes = {
        {"and", svs_closure(FunctionClass(b2, b2, {and2}, 2), 2)},
        {"projections", svs_closure(FunctionClass(b2, b2, {id1}, 2), 2)},
        {"nand", svs_closure(FunctionClass(b2, b2, {nand2}, 2), 2)}};
    for (const auto& [name, k] : classes) {
        GaloisRoundtripReport report = galois_roundtrip_report(k, 2, cfg);
        if (report.entries.size() != 20 - k.size()) ++*failures;
        for (const RoundtripEntry& e : report.entries) {
            bool verified = e.status == SeparationStatus::found;
            if (verified) {
                for (const FiniteFunction& f : k.members())
                    if (!satisfies(f, *e.witness)) verified = false;
                if (satisfies(e.function, *e.witness)) verified = false;
            }
            if (!verified) ++*failures;
        }
        transcript << name << ":\n" << to_text(report);
    }
    return transcript.str();
}

Outcome criterion3(std::string* transcript) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t failures = 0;
    *transcript = roundtrip_transcript(1, &failures);
    Outcome out;
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    out.pass = failures == 0 && out.seconds < 120.0;
    out.detail = "3 classes, every non-member separated and re-verified, " +
                 std::to_string(failures) + " failures";
    return out;
}

// ---- criterion 4: characterized sets are closed and separable ------------

Outcome criterion4() {
    const auto start = std::chrono::steady_clock::now();
    ExecConfig cfg;
    std::mt19937_64 rng(404);
    std::size_t failures = 0;
    const std::vector<std::pair<std::string, FunctionClass>> classes = {
        {"id", FunctionClass(b2, b2, {id1}, 2)},
        {"id-neg", FunctionClass(b2, b2, {id1, not1}, 2)},
        {"and-projections",
         FunctionClass(b2, b2,
                       {and2, id1, projection(b2, 2, 0), projection(b2, 2, 1)}, 2)}};
    for (const auto& [name, k] : classes) {
        ConstraintSet t = constraints_satisfied_by(k, 2, cfg);
        // (a) canonical members
        if (!t.contains(equality_constraint(b2, b2))) ++failures;
        for (int m = 1; m <= 2; ++m) {
            if (!t.contains(empty_constraint(b2, b2, m))) ++failures;
            if (!t.contains(trivial_constraint(b2, b2, m))) ++failures;
        }
        // (b) closure under relaxation, intersection, conjunctive minors
        std::uniform_int_distribution<std::size_t> pick_member(0, t.size() - 1);
        for (int trial = 0; trial < 50; ++trial) {
            const Constraint& c = t.members()[pick_member(rng)];
            std::vector<Tuple> shrunk;
            for (const Tuple& x : c.antecedent().tuples())
                if (rng() % 2) shrunk.push_back(x);
            Constraint relaxed =
                relax(c, Relation(c.arity(), b2, shrunk),
                      c.consequent() | random_relation(rng, b2, c.arity()));
            if (!t.contains(relaxed)) ++failures;

            const Constraint& c1 = t.members()[pick_member(rng)];
            std::vector<Constraint> sharing{c1};
            for (const Constraint& c2 : t.members())
                if (c2.antecedent() == c1.antecedent() && sharing.size() < 3 &&
                    rng() % 4 == 0)
                    sharing.push_back(c2);
            if (!t.contains(intersect_consequents(sharing))) ++failures;
        }
        for (int trial = 0; trial < 200; ++trial) {
            MinorScheme h = random_scheme(rng, 2, 2, 3, 2);
            std::vector<Constraint> family;
            bool fits = true;
            for (std::size_t j = 0; j < h.family_size() && fits; ++j) {
                std::vector<const Constraint*> candidates;
                for (const Constraint& member : t.members())
                    if (member.arity() == h.source_arity(j))
                        candidates.push_back(&member);
                if (candidates.empty()) fits = false;
                else
                    family.push_back(*candidates[static_cast<std::size_t>(
                        pick(rng, 0, static_cast<int>(candidates.size()) - 1))]);
            }
            if (!fits) continue;
            Constraint tight = checked_tight_minor_constraint(h, family, cfg);
            if (!t.contains(tight)) ++failures;
        }
        // (c) separations for sampled outsiders
        int sampled = 0;
        while (sampled < 20) {
            const int m = pick(rng, 1, 2);
            Constraint c(random_relation(rng, b2, m), random_relation(rng, b2, m));
            if (t.contains(c)) continue;
            ++sampled;
            FunctionSeparation sep = separating_function(t, c, cfg);
            if (!sep.found()) {
                ++failures;
                continue;
            }
            if (satisfies(*sep.witness, c)) ++failures;
            for (const Constraint& member : t.members())
                if (!satisfies(*sep.witness, member)) ++failures;
        }
    }
    Outcome out;
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    out.pass = failures == 0 && out.seconds < 300.0;
    out.detail = "3 classes: canonical members, closure, 20 separations each; " +
                 std::to_string(failures) + " failures";
    return out;
}

// ---- criterion 5: superposition = tight minor intersect pattern ----------

std::string superposition_transcript(unsigned jobs, std::size_t* mismatches) {
    ExecConfig cfg;
    cfg.jobs = jobs;
    std::mt19937_64 rng(505);
    std::ostringstream transcript;
    const std::vector<std::string> pool{"p", "q", "r", "s"};
    for (int trial = 0; trial < 500; ++trial) {
        FiniteDomain a("A", pick(rng, 1, 3));
        const int n_labels = pick(rng, 1, 4);
        LabelSet labels(std::vector<std::string>(pool.begin(),
                                                 pool.begin() + n_labels));
        const int m = pick(rng, 1, 3);
        std::vector<std::string> b;
        for (int i = 0; i < m; ++i)
            b.push_back(pool[static_cast<std::size_t>(pick(rng, 0, n_labels - 1))]);
        const int family = pick(rng, 1, 3);
        std::vector<std::vector<std::string>> bs;
        std::vector<Relation> rels;
        for (int j = 0; j < family; ++j) {
            const int nj = pick(rng, 1, 3);
            std::vector<std::string> row;
            for (int i = 0; i < nj; ++i)
                row.push_back(
                    pool[static_cast<std::size_t>(pick(rng, 0, n_labels - 1))]);
            bs.push_back(row);
            rels.push_back(random_relation(rng, a, nj));
        }
        SuperpositionDecomposition d =
            superposition_decomposition(b, bs, labels, rels, cfg);
        Relation super = checked_superposition(rels, b, bs, labels, cfg);
        Relation tight = checked_tight_minor(d.scheme, rels, cfg);
        const bool equal = d.matches && super == (tight & d.equality_pattern);
        if (!equal) ++*mismatches;
        transcript << to_text(super, "s" + std::to_string(trial))
                   << (equal ? "ok" : "MISMATCH") << "\n";
    }
    return transcript.str();
}

Outcome criterion5(std::string* transcript) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t mismatches = 0;
    *transcript = superposition_transcript(1, &mismatches);
    Outcome out;
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    out.pass = mismatches == 0 && out.seconds < 120.0;
    out.detail = "500 superposition instances, " + std::to_string(mismatches) +
                 " mismatches";
    return out;
}

// ---- criterion 6: independently recomputed Pol/Inv/clone counts ----------

Outcome criterion6() {
    const auto start = std::chrono::steady_clock::now();
    ExecConfig cfg;
    std::size_t failures = 0;
    const Relation leq(2, b2, {Tuple({0, 0}, b2), Tuple({0, 1}, b2),
                               Tuple({1, 1}, b2)});

    // pol({<=}, 2): golden 9, recomputed by filtering every table with the
    // naive image oracle
    FunctionClass mono = pol({leq}, 2, cfg);
    std::size_t naive_pol = 0;
    for (int n = 1; n <= 2; ++n) {
        const std::uint64_t tables = n == 1 ? 4 : 16;
        const int positions = n == 1 ? 2 : 4;
        for (std::uint64_t idx = 0; idx < tables; ++idx) {
            std::vector<int> table;
            for (int p = positions - 1; p >= 0; --p)
                table.push_back(static_cast<int>((idx >> p) & 1));
            FiniteFunction f(n, b2, b2, table);
            if (oracle::image(f, leq).subset_of(leq)) ++naive_pol;
        }
    }
    if (mono.size() != 9 || naive_pol != 9) ++failures;

    // inv({neg}, 2): golden 6, recomputed with the naive image oracle
    std::vector<Relation> preserved = inv(FunctionClass(b2, b2, {not1}, 1), 2, cfg);
    std::size_t naive_inv = 0;
    for (int m = 1; m <= 2; ++m) {
        const std::uint64_t points = m == 1 ? 2 : 4;
        auto ts = all_tuples(b2, m);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << points); ++mask) {
            std::vector<Tuple> rts;
            for (std::uint64_t i = 0; i < points; ++i)
                if ((mask >> i) & 1) rts.push_back(ts[i]);
            Relation r(m, b2, rts);
            if (oracle::image(not1, r).subset_of(r)) ++naive_inv;
        }
    }
    if (preserved.size() != 6 || naive_inv != 6) ++failures;

    // clone_generate({NAND}, 2): golden 20, recomputed by an object-level
    // fixpoint and checked to exhaust all functions of arity <= 2
    FunctionClass clone = clone_generate(FunctionClass(b2, b2, {nand2}, 2), 2, cfg);
    std::set<FiniteFunction> naive{nand2, id1, projection(b2, 2, 0),
                                   projection(b2, 2, 1)};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<FiniteFunction> snapshot(naive.begin(), naive.end());
        for (const FiniteFunction& f : snapshot)
            for (int m = 1; m <= 2; ++m) {
                std::vector<FiniteFunction> pool;
                for (const FiniteFunction& g : snapshot)
                    if (g.arity() == m) pool.push_back(g);
                if (pool.empty()) continue;
                std::vector<std::size_t> sel(static_cast<std::size_t>(f.arity()), 0);
                for (;;) {
                    std::vector<FiniteFunction> gs;
                    for (std::size_t s : sel) gs.push_back(pool[s]);
                    if (naive.insert(compose_functions(f, gs)).second) grew = true;
                    std::size_t i = sel.size();
                    while (i > 0 && sel[i - 1] + 1 == pool.size()) sel[--i] = 0;
                    if (i == 0) break;
                    ++sel[i - 1];
                }
            }
    }
    if (clone.size() != 20 || naive.size() != 20) ++failures;

    Outcome out;
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    out.pass = failures == 0;
    out.detail = "pol=9 inv=6 clone=20, each matching its naive recomputation; " +
                 std::to_string(failures) + " failures";
    return out;
}

// ---- criterion 7: local closure is the identity -------------------------

Outcome criterion7() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(707);
    std::size_t failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FiniteFunction> fs;
        for (int i = 0; i < pick(rng, 0, 4); ++i)
            fs.push_back(random_function(rng, b2, b2, pick(rng, 1, 2)));
        FunctionClass k(b2, b2, fs, 2);
        if (!(local_closure_functions(k) == k)) ++failures;

        std::vector<Constraint> cs;
        for (int i = 0; i < pick(rng, 0, 4); ++i) {
            const int m = pick(rng, 1, 2);
            cs.push_back(Constraint(random_relation(rng, b2, m),
                                    random_relation(rng, b2, m)));
        }
        ConstraintSet t(b2, b2, cs, 2);
        if (!(local_closure_constraints(t) == t)) ++failures;
    }
    Outcome out;
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    out.pass = failures == 0;
    out.detail = "50 function classes and 50 constraint sets fixed; " +
                 std::to_string(failures) + " failures";
    return out;
}

// ---- criterion 8: closure harness over the injective family -------------

Outcome criterion8() {
    const auto start = std::chrono::steady_clock::now();
    std::size_t failures = 0;
    FiniteDomain t3("A", 3);
    PartialFamily family(t3, t3, injective_partial_functions(t3, t3, 1));
    ExtensibilityResult ext = is_extensible_family(family);
    if (!ext.extensible) ++failures;

    Prop1Report report = proposition1_harness(family, 200, 2, 808);
    if (!report.ok()) ++failures;

    // re-derive 200 random constraints and check them against every member
    FamilyConstraintTable table = family_constraint_table(family, 2);
    std::mt19937_64 rng(808);
    auto satisfied_by_all = [&](const Constraint& c) {
        for (const PartialFunction& p : family.members())
            if (!partial_satisfies(p, c)) return false;
        return true;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const int m = pick(rng, 1, 2);
        const auto& bucket = table.masks.at(m);
        Constraint c = table.materialize(
            m, static_cast<std::size_t>(
                   pick(rng, 0, static_cast<int>(bucket.size()) - 1)));
        Constraint derived = c;
        const int kind = pick(rng, 0, 2);
        if (kind == 0) {
            std::vector<SchemeEntry> h;
            const int target = pick(rng, 1, 2);
            for (int i = 0; i < c.arity(); ++i)
                h.push_back(SchemeEntry::target(pick(rng, 0, target - 1)));
            derived = simple_minor(c, h, target, {});
        } else if (kind == 1) {
            Constraint other = table.materialize(
                m, static_cast<std::size_t>(
                       pick(rng, 0, static_cast<int>(bucket.size()) - 1)));
            if (other.antecedent() == c.antecedent())
                derived = intersect_consequents({c, other});
        } else {
            std::vector<Tuple> shrunk;
            for (const Tuple& x : c.antecedent().tuples())
                if (rng() % 2) shrunk.push_back(x);
            derived = relax(c, Relation(c.arity(), t3, shrunk),
                            c.consequent() | random_relation(rng, t3, c.arity()));
        }
        if (!satisfied_by_all(derived)) ++failures;
    }
    Outcome out;
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    out.pass = failures == 0;
    out.detail = "extensible family of " + std::to_string(family.size()) +
                 ", harness plus 200 direct re-checks; " +
                 std::to_string(failures) + " violations";
    return out;
}

// ---- criterion 9: oracle agreement aggregated over criteria 1-8 ----------

Outcome criterion9() {
    Outcome out;
    out.pass = oracle_ledger.mismatches == 0 && oracle_ledger.image_checks > 0 &&
               oracle_ledger.minor_checks > 0 &&
               oracle_ledger.superposition_checks > 0;
    out.detail = std::to_string(oracle_ledger.image_checks) + " image, " +
                 std::to_string(oracle_ledger.minor_checks) + " tight-minor, " +
                 std::to_string(oracle_ledger.superposition_checks) +
                 " superposition comparisons, " +
                 std::to_string(oracle_ledger.mismatches) + " byte mismatches";
    return out;
}

// ---- criterion 10: identical serialized output across worker counts ------

Outcome criterion10(const std::string& minor_sweep_seq,
                    const std::string& roundtrip_seq,
                    const std::string& superposition_seq) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t mismatches = 0;
    for (unsigned jobs : {2u, 8u}) {
        std::size_t ignore = 0;
        if (minor_sweep_transcript(jobs, 1000, &ignore) != minor_sweep_seq) ++mismatches;
        if (roundtrip_transcript(jobs, &ignore) != roundtrip_seq) ++mismatches;
        if (superposition_transcript(jobs, &ignore) != superposition_seq)
            ++mismatches;
    }
    Outcome out;
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    out.pass = mismatches == 0;
    out.detail = "criteria 1, 3, 5 rerun with 2 and 8 workers; " +
                 std::to_string(mismatches) + " transcript differences";
    return out;
}

void report(int index, const char* name, const Outcome& outcome, bool* all_pass) {
    std::ostringstream line;
    line << "[" << (index < 10 ? " " : "") << index << "/10] "
         << (outcome.pass ? "PASS" : "FAIL") << " " << name << " ("
         << outcome.detail;
    if (outcome.seconds > 0.0) {
        line.precision(1);
        line << ", " << std::fixed << outcome.seconds << "s";
    }
    line << ")";
    std::cout << line.str() << std::endl;
    if (!outcome.pass) *all_pass = false;
}

} // namespace

int main() {
    bool all_pass = true;
    std::string minor_sweep_seq, roundtrip_seq, superposition_seq;

    report(1, "conjunctive-minor-preservation-sweep", criterion1(&minor_sweep_seq), &all_pass);
    report(2, "composite-scheme-composition", criterion2(), &all_pass);
    report(3, "constructive-class-roundtrip", criterion3(&roundtrip_seq),
           &all_pass);
    report(4, "characterized-set-closure-and-separation", criterion4(), &all_pass);
    report(5, "superposition-decomposition", criterion5(&superposition_seq),
           &all_pass);
    report(6, "pol-inv-clone-goldens", criterion6(), &all_pass);
    report(7, "finite-local-closure-identity", criterion7(), &all_pass);
    report(8, "extensible-family-closure-harness", criterion8(), &all_pass);
    report(9, "oracle-byte-agreement", criterion9(), &all_pass);
    report(10, "parallel-determinism",
           criterion10(minor_sweep_seq, roundtrip_seq, superposition_seq), &all_pass);

    std::cout << (all_pass ? "ACCEPTANCE: all criteria passed"
                           : "ACCEPTANCE: FAILURES PRESENT")
              << std::endl;
    return all_pass ? 0 : 1;
}
