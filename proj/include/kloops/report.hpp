#pragma once

#include <optional>
#include <string>

#include "kloops/constructions.hpp"
#include "kloops/identities.hpp"
#include "kloops/interp.hpp"
#include "kloops/subloop.hpp"
#include "kloops/symetron.hpp"
#include "kloops/translations.hpp"

namespace kloops {

// Everything the `invariants` subcommand reports about one structure. Every
// field is reproducible by re-running the named module operation.
struct InvariantReport {
    std::string kind;  // "loop", "bol-loop", "k-loop" or "symetron"
    int order = 0;

    // Loop-only fields.
    bool is_loop = false;
    bool is_bol = false;
    bool is_aip = false;
    bool is_u2d = false;
    bool is_automorphic_flag = false;
    std::optional<bool> is_fpf;               // nullopt: cap exceeded
    std::optional<size_t> mlt_left_size;      // nullopt: cap exceeded
    std::optional<size_t> mlt_size;
    std::optional<size_t> precession_group_size;
    std::optional<size_t> inner_group_size;
    std::optional<size_t> subloop_count;      // nullopt: not a Bol loop, or capped
    bool subloops_capped = false;
    std::optional<IdentityReport> identities; // only for K-loops

    // Symetron-only field.
    std::optional<size_t> convex_count;
};

inline InvariantReport build_loop_report(const LoopStructure& L, size_t cap) {
    InvariantReport r;
    r.is_loop = true;
    r.order = L.order();
    r.is_bol = L.is_bol();
    r.is_aip = L.is_aip();
    r.is_u2d = L.is_uniquely_2_divisible();
    r.kind = L.is_kloop() ? "k-loop" : (L.is_bol() ? "bol-loop" : "loop");
    r.is_automorphic_flag = is_automorphic(L);

    auto group_size = [](const GeneratedGroup& g) -> std::optional<size_t> {
        if (!g.complete) return std::nullopt;
        return g.size();
    };
    r.mlt_left_size = group_size(mlt_left(L, cap));
    r.mlt_size = group_size(mlt(L, cap));
    r.precession_group_size = group_size(precession_group(L, cap));
    r.inner_group_size = group_size(inner_group(L, cap));
    try {
        r.is_fpf = is_fixed_point_free(L, cap);
    } catch (const LoopError& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
    }
    // `cap` bounds the group closures; subloop enumeration has its own limit.
    if (L.is_bol()) {
        try {
            r.subloop_count = enumerate_subloops(L).size();
        } catch (const LoopError& e) {
            if (e.kind() != ErrorKind::CapExceeded) throw;
            r.subloops_capped = true;
        }
    }
    if (L.is_kloop()) r.identities = check_kloop_identities(L);
    return r;
}

inline InvariantReport build_symetron_report(const SymetronStructure& S, size_t cap) {
    InvariantReport r;
    r.kind = "symetron";
    r.order = S.order();
    r.convex_count = enumerate_convex(S, cap).size();
    return r;
}

inline std::string format_witness(const std::vector<long long>& witness) {
    std::string out = "(";
    for (size_t i = 0; i < witness.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(witness[i]);
    }
    return out + ")";
}

inline std::string render_identity_lines(const IdentityReport& report) {
    std::string out;
    for (const IdentityItem& item : report.items) {
        out += item.name;
        out += item.pass ? ": pass" : ": fail witness=" + format_witness(item.witness);
        out += '\n';
    }
    return out;
}

inline std::string render_invariant_report(const InvariantReport& r) {
    auto yesno = [](bool b) { return b ? "true" : "false"; };
    auto opt_size = [](const std::optional<size_t>& v, const char* missing) {
        return v ? std::to_string(*v) : std::string(missing);
    };
    std::string out;
    out += "kind: " + r.kind + "\n";
    out += "order: " + std::to_string(r.order) + "\n";
    if (r.kind == "symetron") {
        out += "convex_count: " + opt_size(r.convex_count, "cap-exceeded") + "\n";
        return out;
    }
    out += std::string("is_bol: ") + yesno(r.is_bol) + "\n";
    out += std::string("is_aip: ") + yesno(r.is_aip) + "\n";
    out += std::string("is_uniquely_2_divisible: ") + yesno(r.is_u2d) + "\n";
    out += std::string("is_automorphic: ") + yesno(r.is_automorphic_flag) + "\n";
    out += "is_fixed_point_free: " +
           (r.is_fpf ? std::string(yesno(*r.is_fpf)) : std::string("cap-exceeded")) + "\n";
    out += "mlt_left_size: " + opt_size(r.mlt_left_size, "cap-exceeded") + "\n";
    out += "mlt_size: " + opt_size(r.mlt_size, "cap-exceeded") + "\n";
    out += "precession_group_size: " + opt_size(r.precession_group_size, "cap-exceeded") + "\n";
    out += "inner_group_size: " + opt_size(r.inner_group_size, "cap-exceeded") + "\n";
    out += "subloop_count: " + opt_size(r.subloop_count, r.subloops_capped ? "cap-exceeded" : "n/a") +
           "\n";
    if (r.identities) {
        out += std::string("identities: ") + (r.identities->all_pass() ? "pass" : "fail") + "\n";
        out += render_identity_lines(*r.identities);
    } else {
        out += "identities: n/a\n";
    }
    return out;
}

}  // namespace kloops
