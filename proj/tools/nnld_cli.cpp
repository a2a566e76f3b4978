// nnld: constructions, certification, net quality and integral brackets
// from the command line.  Everything goes through the C interface.

#include "nnld/nnld.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 success or certified, 1 refuted, 2 usage or data error.
constexpr int exit_refuted = 1;
constexpr int exit_error = 2;

struct Failure {
    std::string message;
};

void check(nnld_status s) {
    if (s != NNLD_OK)
        throw Failure{std::string(nnld_status_name(s)) + ": " + nnld_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using PointSetPtr = std::unique_ptr<nnld_pointset, Deleter<nnld_pointset, nnld_pointset_free>>;
using ReportPtr = std::unique_ptr<nnld_report, Deleter<nnld_report, nnld_report_free>>;
using SpecPtr = std::unique_ptr<nnld_netspec, Deleter<nnld_netspec, nnld_netspec_free>>;
using SearchPtr = std::unique_ptr<nnld_search, Deleter<nnld_search, nnld_search_free>>;
using IntegrandPtr = std::unique_ptr<nnld_integrand, Deleter<nnld_integrand, nnld_integrand_free>>;
using BracketPtr = std::unique_ptr<nnld_bracket, Deleter<nnld_bracket, nnld_bracket_free>>;

std::string take(char* s) {
    std::string out = s ? s : "";
    nnld_string_free(s);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Failure{"io: cannot open '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os || !(os << text))
        throw Failure{"io: cannot write '" + out_path + "'"};
}

std::vector<long long> parse_list(const std::string& text, char sep) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Failure{"invalid-parameter: '" + item + "' is not an integer"};
        }
    }
    return out;
}

// "1,2,3;3,2,1" -> flattened images, one permutation per ';' group.
std::vector<int> parse_perms(const std::string& text, int& d, int& m) {
    std::vector<int> images;
    std::stringstream ss(text);
    std::string group;
    d = 0;
    m = -1;
    while (std::getline(ss, group, ';')) {
        const auto v = parse_list(group, ',');
        if (m >= 0 && static_cast<int>(v.size()) != m)
            throw Failure{"invalid-parameter: permutations differ in length"};
        m = static_cast<int>(v.size());
        for (auto x : v)
            images.push_back(static_cast<int>(x));
        ++d;
    }
    if (d == 0)
        throw Failure{"invalid-parameter: --perms is empty"};
    return images;
}

// "13" or "1..13"
std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw Failure{"invalid-parameter: bad range '" + text + "' (use M or LO..HI)"};
    }
}

SpecPtr spec_from_perms(int b, const std::string& perms) {
    int d = 0, m = 0;
    const auto images = parse_perms(perms, d, m);
    nnld_netspec* s = nullptr;
    check(nnld_netspec_from_permutations(b, m, d, images.data(), &s));
    return SpecPtr(s);
}

SpecPtr spec_from_ordering(int b, int d, int l) {
    std::vector<int> images(static_cast<std::size_t>(d * d * l));
    check(nnld_perm_ordering(d, l, images.data(), images.size()));
    nnld_netspec* s = nullptr;
    check(nnld_netspec_from_permutations(b, d * l, d, images.data(), &s));
    return SpecPtr(s);
}

struct GenOptions {
    std::string construction;
    int base = 2;
    int m = 1;
    int d = 2;
    long long n = 0;
    int l = 1;
    std::string perms;
    std::string generators;
    std::string g;
    std::string transform = "none";
    std::string out;
};

PointSetPtr build(const GenOptions& o) {
    nnld_pointset* p = nullptr;
    const auto& c = o.construction;
    if (c == "hammersley") {
        check(nnld_hammersley(o.base, o.m, &p));
    } else if (c == "grid") {
        check(nnld_grid_1d(o.n, &p));
    } else if (c == "shifted-grid") {
        check(nnld_shifted_grid_1d(o.n, &p));
    } else if (c == "perm") {
        int d = 0, m = 0;
        const auto images = parse_perms(o.perms, d, m);
        check(nnld_permutation_net(o.base, m, d, images.data(), &p));
    } else if (c == "d3" || c == "d4") {
        const int d = c == "d3" ? 3 : 4;
        std::vector<int> images(static_cast<std::size_t>(d * d * o.l));
        check(nnld_perm_ordering(d, o.l, images.data(), images.size()));
        check(nnld_permutation_net(o.base, d * o.l, d, images.data(), &p));
    } else if (c == "digital") {
        nnld_netspec* s = nullptr;
        check(nnld_netspec_parse(o.base, read_file(o.generators).c_str(), &s));
        SpecPtr spec(s);
        check(nnld_digital_net(spec.get(), &p));
    } else if (c == "rank1pow") {
        check(nnld_rank1_lattice_powers(o.base, o.m, o.d, &p));
    } else if (c == "rank1") {
        const auto g = parse_list(o.g, ',');
        std::vector<int64_t> gv(g.begin(), g.end());
        check(nnld_rank1_lattice(o.n, static_cast<int>(gv.size()), gv.data(), &p));
    } else if (c == "diag") {
        check(nnld_diagonal_lattice(o.n, o.d, &p));
    } else if (c == "cyclic") {
        check(nnld_cyclic_diag_subgroup(o.base, o.m, o.d, &p));
    } else {
        throw Failure{"invalid-parameter: unknown construction '" + c + "'"};
    }
    PointSetPtr ps(p);
    if (o.transform == "none")
        return ps;
    nnld_pointset* t = nullptr;
    if (o.transform == "reflect")
        check(nnld_reflect(ps.get(), &t));
    else if (o.transform == "shift-reflect")
        check(nnld_shift_reflect(ps.get(), &t));
    else if (o.transform == "npld")
        check(nnld_npld_transform(ps.get(), &t));
    else
        throw Failure{"invalid-parameter: unknown transform '" + o.transform + "'"};
    return PointSetPtr(t);
}

int cmd_gen(const GenOptions& o) {
    auto p = build(o);
    char* csv = nullptr;
    check(nnld_pointset_to_csv(p.get(), &csv));
    emit(o.out, take(csv));
    return 0;
}

struct VerifyOptions {
    std::string input;
    std::string property = "nnld";
    bool prechecks = false;
    unsigned long long max_ops = 0;
    std::string out;
};

int cmd_verify(const VerifyOptions& o) {
    nnld_pointset* raw = nullptr;
    check(nnld_pointset_read_csv_file(o.input.c_str(), &raw));
    PointSetPtr p(raw);
    std::string text;
    if (o.prechecks) {
        char* lines = nullptr;
        int ok = 0;
        check(nnld_structural_prechecks(p.get(), &ok, &lines));
        text += take(lines);
    }
    nnld_report* r = nullptr;
    if (o.property == "nnld") {
        check(nnld_verify_nnld(p.get(), o.max_ops, &r));
    } else if (o.property == "npld") {
        check(nnld_verify_npld(p.get(), o.max_ops, &r));
    } else if (o.property == "star") {
        char* value = nullptr;
        check(nnld_star_discrepancy(p.get(), o.max_ops, &value, &r));
        text += "dstar=" + take(value) + "\n";
    } else {
        throw Failure{"invalid-parameter: --property must be nnld, npld or star"};
    }
    ReportPtr report(r);
    char* line = nullptr;
    check(nnld_report_format(report.get(), &line));
    text += take(line) + "\n";
    emit(o.out, text);
    if (nnld_report_verdict(report.get()) == NNLD_VERDICT_REFUTED)
        return exit_refuted;
    return 0;
}

struct QualityOptions {
    std::string construction = "hammersley";
    int base = 2;
    int m = 4;
    int l = 1;
    std::string perms;
    std::string generators;
    bool verify_t = false;
    bool search = false;
    bool list = false;
    unsigned long long max_ops = 0;
    std::string out;
};

std::string search_text(int m, int b, unsigned long long max_ops, bool list) {
    nnld_search* raw = nullptr;
    check(nnld_search_nnld_generators(m, b, max_ops, 1, &raw));
    SearchPtr s(raw);
    std::string text = "count=" + std::to_string(nnld_search_count(s.get())) + "\n";
    std::cerr << "examined=" << nnld_search_examined(s.get())
              << " passed_prefilter=" << nnld_search_passed_prefilter(s.get())
              << " nonsingular_after_prefilter=" << nnld_search_nonsingular_after_prefilter(s.get())
              << " prefilter_misses=" << nnld_search_prefilter_misses(s.get()) << "\n";
    if (list)
        for (std::size_t i = 0; i < nnld_search_count(s.get()); ++i) {
            char* line = nullptr;
            check(nnld_search_matrix(s.get(), i, &line));
            text += take(line) + "\n";
        }
    return text;
}

int cmd_quality(const QualityOptions& o) {
    if (o.search) {
        emit(o.out, search_text(o.m, o.base, o.max_ops, o.list));
        return 0;
    }
    SpecPtr spec;
    if (o.construction == "hammersley") {
        nnld_netspec* s = nullptr;
        check(nnld_netspec_hammersley(o.base, o.m, &s));
        spec.reset(s);
    } else if (o.construction == "d3") {
        spec = spec_from_ordering(o.base, 3, o.l);
    } else if (o.construction == "d4") {
        spec = spec_from_ordering(o.base, 4, o.l);
    } else if (o.construction == "perm") {
        spec = spec_from_perms(o.base, o.perms);
    } else if (o.construction == "digital") {
        nnld_netspec* s = nullptr;
        check(nnld_netspec_parse(o.base, read_file(o.generators).c_str(), &s));
        spec.reset(s);
    } else {
        throw Failure{"invalid-parameter: unknown construction '" + o.construction + "'"};
    }
    char* line = nullptr;
    check(nnld_quality_report(spec.get(), o.verify_t ? 1 : 0, o.max_ops, &line));
    emit(o.out, take(line) + "\n");
    return 0;
}

struct BracketOptions {
    std::string integrand = "bvn07";
    std::string table;
    int d = 2;
    int base = 2;
    std::string m = "13";
    int figure = 0;
    bool trust = false;
    unsigned long long max_ops = 0;
    std::string out;
};

IntegrandPtr make_integrand(const BracketOptions& o) {
    nnld_integrand* f = nullptr;
    if (o.integrand == "table") {
        if (o.table.empty())
            throw Failure{"invalid-parameter: --integrand table needs --table FILE"};
        check(nnld_integrand_table_csv(o.d, read_file(o.table).c_str(), &f));
    } else {
        check(nnld_integrand_named(o.integrand.c_str(), &f));
    }
    return IntegrandPtr(f);
}

int cmd_bracket(const BracketOptions& o) {
    if (o.figure != 0 && o.figure != 1)
        throw Failure{"invalid-parameter: --figure 1 is the bracket figure; use the figure2 command for the other"};
    auto f = make_integrand(o);
    const auto [lo, hi] = parse_range(o.m);
    if (lo < 1 || hi < lo)
        throw Failure{"invalid-parameter: need 1 <= m_lo <= m_hi"};
    std::string csv = std::string(nnld_bracket_csv_header()) + "\n";
    for (int m = lo; m <= hi; ++m) {
        nnld_bracket* raw = nullptr;
        check(nnld_bracket_run(f.get(), o.base, m, o.trust ? 1 : 0, o.max_ops, &raw));
        BracketPtr r(raw);
        char* row = nullptr;
        check(nnld_bracket_csv_row(r.get(), m, &row));
        csv += take(row) + "\n";
        char* info = nullptr;
        check(nnld_bracket_describe(r.get(), &info));
        std::cerr << "m=" << m << "\n" << take(info);
    }
    emit(o.out, csv);
    return 0;
}

struct Figure2Options {
    std::string m = "1..13";
    bool trust = false;
    unsigned long long max_ops = 0;
    std::string out;
};

int cmd_figure2(const Figure2Options& o) {
    const auto [lo, hi] = parse_range(o.m);
    char* csv = nullptr;
    check(nnld_figure2_csv(lo, hi, o.trust ? 1 : 0, o.max_ops, &csv));
    emit(o.out, take(csv));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point sets with signed local discrepancy, exact certification and integral brackets"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Write a point set as CSV");
    g->add_option("--construction", gen.construction,
                  "hammersley | grid | shifted-grid | perm | d3 | d4 | digital | rank1pow | rank1 | diag | cyclic")
        ->required();
    g->add_option("--base", gen.base, "Base b");
    g->add_option("--m", gen.m, "Exponent m (n = b^m)");
    g->add_option("--d", gen.d, "Dimension");
    g->add_option("--n", gen.n, "Number of points for grid, rank1 and diag");
    g->add_option("--l", gen.l, "Block count for d3 / d4 orderings");
    g->add_option("--perms", gen.perms, "Permutations, e.g. 1,2,3;3,2,1");
    g->add_option("--generators", gen.generators, "File with one generator matrix per line");
    g->add_option("--g", gen.g, "Lattice generating vector, e.g. 1,3");
    g->add_option("--transform", gen.transform, "none | reflect | shift-reflect | npld");
    g->add_option("--out", gen.out, "Output path (default stdout)");

    VerifyOptions ver;
    auto* v = app.add_subcommand("verify", "Certify NNLD / NPLD or compute the star discrepancy");
    v->add_option("input", ver.input, "Point-set CSV")->required();
    v->add_option("--property", ver.property, "nnld | npld | star");
    v->add_flag("--prechecks", ver.prechecks, "Also print the structural prechecks");
    v->add_option("--max-ops", ver.max_ops, "Operation budget");
    v->add_option("--out", ver.out, "Output path (default stdout)");

    QualityOptions qual;
    auto* q = app.add_subcommand("quality", "rho and t of a digital net, or the NNLD generator search");
    q->add_option("--construction", qual.construction, "hammersley | d3 | d4 | perm | digital");
    q->add_option("--base", qual.base, "Base b");
    q->add_option("--m", qual.m, "Exponent m");
    q->add_option("--l", qual.l, "Block count for d3 / d4");
    q->add_option("--perms", qual.perms, "Permutations, e.g. 1,2,3;3,2,1");
    q->add_option("--generators", qual.generators, "File with one generator matrix per line");
    q->add_flag("--verify-t", qual.verify_t, "Enumerate elementary intervals for the exact t");
    q->add_flag("--search-nnld", qual.search, "Count second generators giving NNLD nets with C1 = I");
    q->add_flag("--list", qual.list, "With --search-nnld, print the matrices");
    q->add_option("--max-ops", qual.max_ops, "Operation budget");
    q->add_option("--out", qual.out, "Output path (default stdout)");

    BracketOptions br;
    auto* b = app.add_subcommand("bracket", "Certified lower and upper bounds for an integral");
    b->add_option("--integrand", br.integrand, "bvn07 | product1..product9 | const | table");
    b->add_option("--table", br.table, "CSV of atoms w,a_1,...,a_d for --integrand table");
    b->add_option("--d", br.d, "Dimension of a table integrand");
    b->add_option("--base", br.base, "Base b");
    b->add_option("--m", br.m, "m or LO..HI");
    b->add_option("--figure", br.figure, "1: rows for the bounds-versus-n figure");
    b->add_flag("--trust-construction", br.trust, "Skip certification of theorem-backed point sets");
    b->add_option("--max-ops", br.max_ops, "Operation budget");
    b->add_option("--out", br.out, "Output path (default stdout)");

    Figure2Options f2;
    auto* f = app.add_subcommand("figure2", "Koksma-Hlawka width versus bracket width for bvn07");
    f->add_option("--m", f2.m, "m or LO..HI");
    f->add_flag("--trust-construction", f2.trust, "Skip certification of theorem-backed point sets");
    f->add_option("--max-ops", f2.max_ops, "Operation budget");
    f->add_option("--out", f2.out, "Output path (default stdout)");

    QualityOptions srch;
    srch.search = true;
    srch.list = true;
    auto* s = app.add_subcommand("search", "List second generators giving NNLD nets with C1 = I");
    s->add_option("--m", srch.m, "Exponent m (1..5)");
    s->add_option("--base", srch.base, "Base (2 only)");
    s->add_option("--max-ops", srch.max_ops, "Operation budget");
    s->add_option("--out", srch.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }

    try {
        if (*g)
            return cmd_gen(gen);
        if (*v)
            return cmd_verify(ver);
        if (*q)
            return cmd_quality(qual);
        if (*b)
            return cmd_bracket(br);
        if (*f)
            return cmd_figure2(f2);
        if (*s)
            return cmd_quality(srch);
    } catch (const Failure& e) {
        std::cerr << "error: " << e.message << "\n";
        return exit_error;
    }
    return exit_error;
}
