// Command-line front end: validation, invariant reports, conversion,
// subloop/normality/quotient analysis, covers, isomorphism, enumeration.
//
// Exit codes: 0 = success / checked property true; 1 = checked property false
// or witness absent; 2 = input/format error, precondition violation, or cap
// exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "kloops/kloops.hpp"

namespace {

kloops::CayleyTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) kloops::fail(kloops::ErrorKind::MalformedInput, "cannot open file " + path);
    return kloops::parse_table(in);
}

struct Options {
    std::string file, file_b;
    std::string as_kind, to_kind;
    std::string subset;
    std::string out_path, dir_path;
    int basepoint = 0;
    int element = 0;
    int order = 0;
    size_t cap = kloops::kDefaultGroupCap;
    size_t enum_cap = 1000000;
};

int run_validate(const Options& opt, std::ostream& os) {
    kloops::CayleyTable t = load_table(opt.file);
    if (opt.as_kind == "kloop") {
        kloops::LoopStructure L = kloops::make_loop(t);
        os << "kind: " << (L.is_kloop() ? "k-loop" : (L.is_bol() ? "bol-loop" : "loop")) << "\n";
        os << "order: " << L.order() << "\n";
        os << "is_bol: " << (L.is_bol() ? "true" : "false") << "\n";
        os << "is_aip: " << (L.is_aip() ? "true" : "false") << "\n";
        os << "is_uniquely_2_divisible: " << (L.is_uniquely_2_divisible() ? "true" : "false")
           << "\n";
        os << "valid: " << (L.is_kloop() ? "true" : "false") << "\n";
        return L.is_kloop() ? 0 : 1;
    }
    kloops::SymetronStructure S = kloops::make_symetron(t);
    os << "kind: symetron\n";
    os << "order: " << S.order() << "\n";
    os << "valid: true\n";
    return 0;
}

int run_invariants(const Options& opt, std::ostream& os) {
    kloops::CayleyTable t = load_table(opt.file);
    kloops::InvariantReport report;
    try {
        report = kloops::build_loop_report(kloops::make_loop(t), opt.cap);
    } catch (const kloops::LoopError& e) {
        if (e.kind() != kloops::ErrorKind::NotLatin && e.kind() != kloops::ErrorKind::NoIdentity)
            throw;
        report = kloops::build_symetron_report(kloops::make_symetron(t), opt.cap);
    }
    os << kloops::render_invariant_report(report);
    return 0;
}

int run_identities(const Options& opt, std::ostream& os) {
    kloops::LoopStructure L = kloops::make_loop(load_table(opt.file));
    kloops::IdentityReport report = kloops::check_kloop_identities(L);
    os << kloops::render_identity_lines(report);
    return report.all_pass() ? 0 : 1;
}

int run_convert(const Options& opt, std::ostream& os) {
    kloops::CayleyTable t = load_table(opt.file);
    if (opt.to_kind == "symetron") {
        kloops::SymetronStructure S = kloops::kloop_to_symetron(kloops::make_loop(t));
        os << kloops::serialize_table(S.table()) << "\n";
    } else {
        kloops::BasedLoop based = kloops::symetron_to_kloop(kloops::make_symetron(t), opt.basepoint);
        os << kloops::serialize_table(based.loop.table()) << "\n";
    }
    return 0;
}

int run_subloops(const Options& opt, std::ostream& os) {
    kloops::LoopStructure L = kloops::make_loop(load_table(opt.file));
    auto subloops = kloops::enumerate_subloops(L, opt.cap);
    os << "count: " << subloops.size() << "\n";
    for (const auto& s : subloops) os << "subloop: " << kloops::format_subset(s) << "\n";
    return 0;
}

int run_normal(const Options& opt, std::ostream& os) {
    kloops::LoopStructure L = kloops::make_loop(load_table(opt.file));
    kloops::SubsetMask C = kloops::parse_subset(opt.subset, L.order());
    bool by_generators = kloops::is_normal(L, C);
    bool by_cosets = kloops::is_normal_by_cosets(L, C);
    os << "subloop: " << kloops::format_subset(C) << "\n";
    os << "normal: " << (by_generators ? "true" : "false") << "\n";
    os << "normal_by_cosets: " << (by_cosets ? "true" : "false") << "\n";
    if (by_generators != by_cosets)
        kloops::fail(kloops::ErrorKind::Precondition,
                     "normality characterizations disagree (internal error)");
    return by_generators ? 0 : 1;
}

int run_quotient(const Options& opt, std::ostream& os) {
    kloops::LoopStructure L = kloops::make_loop(load_table(opt.file));
    kloops::SubsetMask C = kloops::parse_subset(opt.subset, L.order());
    kloops::QuotientResult q = kloops::quotient(L, C);
    os << kloops::serialize_table(q.table) << "\n";
    return 0;
}

int run_centralizer(const Options& opt, std::ostream& os) {
    kloops::LoopStructure L = kloops::make_loop(load_table(opt.file));
    if (opt.element < 0 || opt.element >= L.order())
        kloops::fail(kloops::ErrorKind::Precondition, "element out of range");
    kloops::SubsetMask cent = kloops::centralizer(L, opt.element);
    kloops::SubsetMask center = kloops::center_of_centralizer(L, opt.element);
    os << "element: " << opt.element << "\n";
    os << "centralizer: " << kloops::format_subset(cent) << "\n";
    os << "center_of_centralizer: " << kloops::format_subset(center) << "\n";
    return 0;
}

int run_iso(const Options& opt, std::ostream& os) {
    kloops::LoopStructure a = kloops::make_loop(load_table(opt.file));
    kloops::LoopStructure b = kloops::make_loop(load_table(opt.file_b));
    auto witness = kloops::find_isomorphism(a, b);
    os << "isomorphic: " << (witness ? "true" : "false") << "\n";
    if (!witness) return 1;
    std::string map;
    for (size_t i = 0; i < witness->size(); ++i) {
        if (i) map += ',';
        map += std::to_string((*witness)[i]);
    }
    os << "map: " << map << "\n";
    return 0;
}

int run_cover(const Options& opt, std::ostream& os) {
    kloops::SymetronStructure S = kloops::make_symetron(load_table(opt.file));
    kloops::SubsetMask X = kloops::parse_subset(opt.subset, S.order());
    auto pairs = kloops::cover_by_translates(S, X, opt.cap);
    os << "subset: " << kloops::format_subset(X) << "\n";
    os << "pairs: " << pairs.size() << "\n";
    for (auto [u, v] : pairs) os << "pair: " << u << "," << v << "\n";
    return 0;
}

int run_enumerate(const Options& opt, std::ostream& os) {
    auto tables = kloops::enumerate_kloops(opt.order, opt.enum_cap);
    os << "# enumerate order " << opt.order << ": " << tables.size() << " classes\n";
    if (!opt.dir_path.empty()) {
        for (size_t i = 0; i < tables.size(); ++i) {
            std::string path = opt.dir_path + "/kloop_" + std::to_string(opt.order) + "_" +
                               std::to_string(i + 1) + ".tbl";
            std::ofstream out(path);
            if (!out) kloops::fail(kloops::ErrorKind::MalformedInput, "cannot write " + path);
            out << kloops::serialize_table(tables[i]) << "\n";
            os << "# wrote " << path << "\n";
        }
        return 0;
    }
    for (size_t i = 0; i < tables.size(); ++i) {
        os << "# class " << (i + 1) << "\n";
        os << kloops::serialize_table(tables[i]) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite loop / K-loop / symetron toolkit"};
    app.require_subcommand(1);
    // Global options may appear before or after the subcommand.
    app.fallthrough();

    Options opt;
    app.add_option("--cap", opt.cap, "group-closure element cap");
    app.add_option("--out", opt.out_path, "write the report to this file instead of stdout");

    auto* validate = app.add_subcommand("validate", "validate a table as a K-loop or symetron");
    validate->add_option("file", opt.file)->required();
    validate->add_option("--as", opt.as_kind)
        ->required()
        ->check(CLI::IsMember({"kloop", "symetron"}));

    auto* invariants = app.add_subcommand("invariants", "full invariant report");
    invariants->add_option("file", opt.file)->required();

    auto* identities = app.add_subcommand("identities", "K-loop identity suite");
    identities->add_option("file", opt.file)->required();

    auto* convert = app.add_subcommand("convert", "convert between K-loop and symetron tables");
    convert->add_option("file", opt.file)->required();
    convert->add_option("--to", opt.to_kind)
        ->required()
        ->check(CLI::IsMember({"symetron", "kloop"}));
    convert->add_option("--basepoint", opt.basepoint, "basepoint for symetron -> kloop");

    auto* subloops = app.add_subcommand("subloops", "enumerate all subloops");
    subloops->add_option("file", opt.file)->required();

    auto* normal = app.add_subcommand("normal", "test normality of a subloop");
    normal->add_option("file", opt.file)->required();
    normal->add_option("--subloop", opt.subset)->required();

    auto* quotient = app.add_subcommand("quotient", "quotient by a normal subloop");
    quotient->add_option("file", opt.file)->required();
    quotient->add_option("--subloop", opt.subset)->required();

    auto* centralizer = app.add_subcommand("centralizer", "centralizer and its center");
    centralizer->add_option("file", opt.file)->required();
    centralizer->add_option("--element", opt.element)->required();

    auto* iso = app.add_subcommand("iso", "search for a loop isomorphism");
    iso->add_option("fileA", opt.file)->required();
    iso->add_option("fileB", opt.file_b)->required();

    auto* cover = app.add_subcommand("cover", "cover the carrier by translates of a subset");
    cover->add_option("file", opt.file)->required();
    cover->add_option("--subset", opt.subset)->required();

    auto* enumerate = app.add_subcommand("enumerate", "enumerate K-loops of a given order");
    enumerate->add_option("--order", opt.order)->required();
    enumerate->add_option("--cap", opt.enum_cap, "isomorphism-class cap");
    enumerate->add_option("--dir", opt.dir_path, "write one table file per class here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int help = app.exit(e);  // prints the usage message
        return help == 0 ? 0 : 2;
    }

    std::ostringstream os;
    int code = 2;
    try {
        if (validate->parsed()) code = run_validate(opt, os);
        else if (invariants->parsed()) code = run_invariants(opt, os);
        else if (identities->parsed()) code = run_identities(opt, os);
        else if (convert->parsed()) code = run_convert(opt, os);
        else if (subloops->parsed()) code = run_subloops(opt, os);
        else if (normal->parsed()) code = run_normal(opt, os);
        else if (quotient->parsed()) code = run_quotient(opt, os);
        else if (centralizer->parsed()) code = run_centralizer(opt, os);
        else if (iso->parsed()) code = run_iso(opt, os);
        else if (cover->parsed()) code = run_cover(opt, os);
        else if (enumerate->parsed()) code = run_enumerate(opt, os);
    } catch (const kloops::LoopError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (opt.out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream out(opt.out_path);
        if (!out) {
            std::cerr << "error: cannot write " << opt.out_path << "\n";
            return 2;
        }
        out << os.str();
    }
    return code;
}
