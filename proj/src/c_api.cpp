#include "nnld/nnld.h"

#include "nnld/bracket.hpp"
#include "nnld/discrepancy.hpp"
#include "nnld/netquality.hpp"
#include "nnld/pointset.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <new>
#include <sstream>

struct nnld_pointset {
    nnld::PointSet p;
};
struct nnld_report {
    nnld::DiscrepancyReport r;
};
struct nnld_netspec {
    nnld::DigitalNetSpec s;
};
struct nnld_search {
    nnld::GeneratorSearchResult r;
};
struct nnld_integrand {
    nnld::CMIntegrand f;
};
struct nnld_bracket {
    nnld::BracketResult r;
};

namespace {

thread_local std::string last_error;

nnld_status status_of(nnld::ErrorKind k) {
    using nnld::ErrorKind;
    switch (k) {
    case ErrorKind::invalid_parameter: return NNLD_ERR_INVALID;
    case ErrorKind::capacity: return NNLD_ERR_CAPACITY;
    case ErrorKind::precondition: return NNLD_ERR_PRECONDITION;
    case ErrorKind::budget_exceeded: return NNLD_ERR_BUDGET;
    case ErrorKind::unsupported_arithmetic: return NNLD_ERR_UNSUPPORTED;
    case ErrorKind::refused: return NNLD_ERR_REFUSED;
    case ErrorKind::parse: return NNLD_ERR_PARSE;
    case ErrorKind::io: return NNLD_ERR_IO;
    }
    return NNLD_ERR_INTERNAL;
}

template <class F>
nnld_status guard(F&& f) noexcept {
    try {
        f();
        return NNLD_OK;
    } catch (const nnld::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return NNLD_ERR_CAPACITY;
    } catch (const std::exception& e) {
        last_error = e.what();
        return NNLD_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return NNLD_ERR_INTERNAL;
    }
}

template <class T>
void need(T* ptr, const char* what) {
    if (ptr == nullptr)
        nnld::fail(nnld::ErrorKind::invalid_parameter, std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

nnld::Budget budget(std::uint64_t max_ops) {
    nnld::Budget b;
    if (max_ops != 0)
        b.max_ops = max_ops;
    return b;
}

nnld::BoundOptions bound_options(int trust, std::uint64_t max_ops) {
    return {trust != 0, budget(max_ops)};
}

std::vector<nnld::Permutation> permutations(int m, int d, const int* images) {
    need(images, "images");
    if (m < 1 || d < 1)
        nnld::fail(nnld::ErrorKind::invalid_parameter, "need m >= 1 and d >= 1");
    std::vector<nnld::Permutation> perms;
    for (int j = 0; j < d; ++j)
        perms.emplace_back(std::vector<int>(images + static_cast<std::ptrdiff_t>(j) * m,
                                            images + static_cast<std::ptrdiff_t>(j + 1) * m));
    return perms;
}

nnld_status make_pointset(nnld_pointset** out, const std::function<nnld::PointSet()>& build) {
    return guard([&] {
        need(out, "out");
        *out = new nnld_pointset{build()};
    });
}

} // namespace

extern "C" {

const char* nnld_last_error(void) {
    return last_error.c_str();
}

const char* nnld_status_name(nnld_status s) {
    switch (s) {
    case NNLD_OK: return "ok";
    case NNLD_ERR_INVALID: return "invalid-parameter";
    case NNLD_ERR_CAPACITY: return "capacity";
    case NNLD_ERR_PRECONDITION: return "precondition";
    case NNLD_ERR_BUDGET: return "budget-exceeded";
    case NNLD_ERR_UNSUPPORTED: return "unsupported-arithmetic";
    case NNLD_ERR_REFUSED: return "refused";
    case NNLD_ERR_PARSE: return "parse";
    case NNLD_ERR_IO: return "io";
    case NNLD_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void nnld_string_free(char* s) {
    std::free(s);
}

nnld_status nnld_grid_1d(int64_t n, nnld_pointset** out) {
    return make_pointset(out, [&] { return nnld::grid_1d(n); });
}

nnld_status nnld_shifted_grid_1d(int64_t n, nnld_pointset** out) {
    return make_pointset(out, [&] { return nnld::shifted_grid_1d(n); });
}

nnld_status nnld_hammersley(int b, int m, nnld_pointset** out) {
    return make_pointset(out, [&] { return nnld::hammersley(b, m); });
}

nnld_status nnld_permutation_net(int b, int m, int d, const int* images, nnld_pointset** out) {
    return make_pointset(out, [&] { return nnld::permutation_net(b, m, permutations(m, d, images)); });
}

nnld_status nnld_digital_net(const nnld_netspec* spec, nnld_pointset** out) {
    return make_pointset(out, [&] {
        need(spec, "spec");
        return nnld::digital_net(spec->s);
    });
}

nnld_status nnld_rank1_lattice_powers(int b, int m, int d, nnld_pointset** out) {
    return make_pointset(out, [&] { return nnld::rank1_lattice_powers(b, m, d); });
}

nnld_status nnld_rank1_lattice(int64_t n, int d, const int64_t* g, nnld_pointset** out) {
    return make_pointset(out, [&] {
        need(g, "g");
        if (d < 1)
            nnld::fail(nnld::ErrorKind::invalid_parameter, "need d >= 1");
        return nnld::rank1_lattice(n, std::span<const std::int64_t>(g, static_cast<std::size_t>(d)));
    });
}

nnld_status nnld_diagonal_lattice(int64_t n, int d, nnld_pointset** out) {
    return make_pointset(out, [&] { return nnld::diagonal_lattice(n, d); });
}

nnld_status nnld_cyclic_diag_subgroup(int b, int m, int d, nnld_pointset** out) {
    return make_pointset(out, [&] { return nnld::cyclic_diag_subgroup(b, m, d); });
}

nnld_status nnld_pointset_from_numerators(int d, int64_t den, int64_t n, const int64_t* numerators,
                                          nnld_pointset** out) {
    return make_pointset(out, [&] {
        need(numerators, "numerators");
        if (d < 1 || n < 1)
            nnld::fail(nnld::ErrorKind::invalid_parameter, "need d >= 1 and n >= 1");
        std::vector<std::int64_t> c(numerators, numerators + n * d);
        return nnld::PointSet(d, den, std::move(c), {"numerators", "numerators", nnld::Guarantee::none, false});
    });
}

nnld_status nnld_reflect(const nnld_pointset* p, nnld_pointset** out) {
    return make_pointset(out, [&] {
        need(p, "p");
        return nnld::reflect(p->p);
    });
}

nnld_status nnld_shift_reflect(const nnld_pointset* p, nnld_pointset** out) {
    return make_pointset(out, [&] {
        need(p, "p");
        return nnld::shift_reflect(p->p);
    });
}

nnld_status nnld_npld_transform(const nnld_pointset* p, nnld_pointset** out) {
    return make_pointset(out, [&] {
        need(p, "p");
        return nnld::npld_transform(p->p);
    });
}

nnld_status nnld_cartesian_product(const nnld_pointset* p, const nnld_pointset* q, nnld_pointset** out) {
    return make_pointset(out, [&] {
        need(p, "p");
        need(q, "q");
        return nnld::cartesian_product(p->p, q->p);
    });
}

void nnld_pointset_free(nnld_pointset* p) {
    delete p;
}

int nnld_pointset_dim(const nnld_pointset* p) {
    return p ? p->p.dim() : 0;
}

int64_t nnld_pointset_size(const nnld_pointset* p) {
    return p ? p->p.size() : 0;
}

int64_t nnld_pointset_denominator(const nnld_pointset* p) {
    return p ? p->p.denominator() : 0;
}

nnld_status nnld_pointset_numerator(const nnld_pointset* p, int64_t i, int j, int64_t* out) {
    return guard([&] {
        need(p, "p");
        need(out, "out");
        if (i < 0 || i >= p->p.size() || j < 0 || j >= p->p.dim())
            nnld::fail(nnld::ErrorKind::invalid_parameter, "index out of range");
        *out = p->p.numerator(i, j);
    });
}

const char* nnld_pointset_provenance(const nnld_pointset* p) {
    return p ? p->p.provenance().description.c_str() : "";
}

nnld_guarantee nnld_pointset_guarantee(const nnld_pointset* p) {
    if (!p)
        return NNLD_GUARANTEE_NONE;
    switch (p->p.provenance().guarantee) {
    case nnld::Guarantee::nnld: return NNLD_GUARANTEE_NNLD;
    case nnld::Guarantee::npld: return NNLD_GUARANTEE_NPLD;
    case nnld::Guarantee::none: break;
    }
    return NNLD_GUARANTEE_NONE;
}

nnld_status nnld_pointset_same_multiset(const nnld_pointset* p, const nnld_pointset* q, int* out) {
    return guard([&] {
        need(p, "p");
        need(q, "q");
        need(out, "out");
        *out = p->p.same_multiset(q->p) ? 1 : 0;
    });
}

nnld_status nnld_pointset_to_csv(const nnld_pointset* p, char** out) {
    return guard([&] {
        need(p, "p");
        need(out, "out");
        *out = dup(nnld::to_csv(p->p));
    });
}

nnld_status nnld_pointset_from_csv(const char* text, nnld_pointset** out) {
    return make_pointset(out, [&] {
        need(text, "text");
        std::istringstream in(text);
        return nnld::read_csv(in);
    });
}

nnld_status nnld_pointset_read_csv_file(const char* path, nnld_pointset** out) {
    return make_pointset(out, [&] {
        need(path, "path");
        return nnld::read_csv_file(path);
    });
}

nnld_status nnld_pointset_write_csv_file(const nnld_pointset* p, const char* path) {
    return guard([&] {
        need(p, "p");
        need(path, "path");
        std::ofstream os(path);
        if (!os)
            nnld::fail(nnld::ErrorKind::io, std::string("cannot write '") + path + "'");
        nnld::write_csv(os, p->p);
        if (!os)
            nnld::fail(nnld::ErrorKind::io, std::string("write to '") + path + "' failed");
    });
}

nnld_status nnld_local_disc(const nnld_pointset* p, const char* const* z, int closed, char** out) {
    return guard([&] {
        need(p, "p");
        need(z, "z");
        need(out, "out");
        std::vector<nnld::Rational> corner;
        for (int j = 0; j < p->p.dim(); ++j) {
            need(z[j], "z[j]");
            corner.push_back(nnld::parse_rational(z[j]));
        }
        const auto v = closed ? nnld::local_disc_closed(p->p, corner) : nnld::local_disc_open(p->p, corner);
        *out = dup(nnld::to_string(v));
    });
}

nnld_status nnld_verify_nnld(const nnld_pointset* p, uint64_t max_ops, nnld_report** out) {
    return guard([&] {
        need(p, "p");
        need(out, "out");
        *out = new nnld_report{nnld::verify_nnld(p->p, budget(max_ops))};
    });
}

nnld_status nnld_verify_npld(const nnld_pointset* p, uint64_t max_ops, nnld_report** out) {
    return guard([&] {
        need(p, "p");
        need(out, "out");
        *out = new nnld_report{nnld::verify_npld(p->p, budget(max_ops))};
    });
}

nnld_status nnld_star_discrepancy(const nnld_pointset* p, uint64_t max_ops, char** value, nnld_report** out) {
    return guard([&] {
        need(p, "p");
        need(value, "value");
        auto [d, report] = nnld::star_discrepancy(p->p, budget(max_ops));
        *value = dup(nnld::to_string(d));
        if (out)
            *out = new nnld_report{std::move(report)};
    });
}

nnld_status nnld_hammersley_star_disc_formula(int m, char** out) {
    return guard([&] {
        need(out, "out");
        *out = dup(nnld::to_string(nnld::hammersley_star_disc_formula(m)));
    });
}

nnld_status nnld_structural_prechecks(const nnld_pointset* p, int* all_passed, char** text) {
    return guard([&] {
        need(p, "p");
        std::string s;
        bool ok = true;
        for (const auto& c : nnld::structural_prechecks(p->p)) {
            s += c.check + ": " + (!c.applicable ? "n/a" : c.passed ? "pass" : "fail") + "\n";
            ok = ok && (!c.applicable || c.passed);
        }
        if (all_passed)
            *all_passed = ok ? 1 : 0;
        if (text)
            *text = dup(s);
    });
}

nnld_status nnld_is_projection_regular(const nnld_pointset* p, int* out) {
    return guard([&] {
        need(p, "p");
        need(out, "out");
        *out = nnld::is_projection_regular(p->p) ? 1 : 0;
    });
}

nnld_verdict nnld_report_verdict(const nnld_report* r) {
    if (!r)
        return NNLD_VERDICT_REFUTED;
    switch (r->r.verdict) {
    case nnld::Verdict::certified_nnld: return NNLD_VERDICT_CERTIFIED_NNLD;
    case nnld::Verdict::certified_npld: return NNLD_VERDICT_CERTIFIED_NPLD;
    case nnld::Verdict::refuted: return NNLD_VERDICT_REFUTED;
    case nnld::Verdict::star_value: return NNLD_VERDICT_STAR_VALUE;
    }
    return NNLD_VERDICT_REFUTED;
}

int nnld_report_certified(const nnld_report* r) {
    return r && r->r.certified() ? 1 : 0;
}

uint64_t nnld_report_boxes(const nnld_report* r) {
    return r ? r->r.boxes : 0;
}

nnld_status nnld_report_delta(const nnld_report* r, char** out) {
    return guard([&] {
        need(r, "r");
        need(out, "out");
        *out = dup(nnld::to_string(r->r.delta));
    });
}

nnld_status nnld_report_corner(const nnld_report* r, int j, char** out) {
    return guard([&] {
        need(r, "r");
        need(out, "out");
        if (j < 0 || static_cast<std::size_t>(j) >= r->r.corner.size())
            nnld::fail(nnld::ErrorKind::invalid_parameter, "corner index out of range");
        *out = dup(nnld::to_string(r->r.corner[static_cast<std::size_t>(j)]));
    });
}

nnld_status nnld_report_format(const nnld_report* r, char** out) {
    return guard([&] {
        need(r, "r");
        need(out, "out");
        *out = dup(nnld::format_report(r->r));
    });
}

void nnld_report_free(nnld_report* r) {
    delete r;
}

nnld_status nnld_netspec_create(int b, int m, int d, const int* entries, nnld_netspec** out) {
    return guard([&] {
        need(entries, "entries");
        need(out, "out");
        if (m < 1 || d < 1)
            nnld::fail(nnld::ErrorKind::invalid_parameter, "need m >= 1 and d >= 1");
        nnld::DigitalNetSpec spec{b, m, {}};
        const std::ptrdiff_t cells = static_cast<std::ptrdiff_t>(m) * m;
        for (int j = 0; j < d; ++j)
            spec.matrices.emplace_back(b, m, std::vector<int>(entries + j * cells, entries + (j + 1) * cells));
        spec.validate();
        *out = new nnld_netspec{std::move(spec)};
    });
}

nnld_status nnld_netspec_from_permutations(int b, int m, int d, const int* images, nnld_netspec** out) {
    return guard([&] {
        need(out, "out");
        nnld::DigitalNetSpec spec{b, m, {}};
        for (const auto& pi : permutations(m, d, images))
            spec.matrices.push_back(nnld::GeneratorMatrix::from_permutation(b, pi));
        spec.validate();
        *out = new nnld_netspec{std::move(spec)};
    });
}

nnld_status nnld_netspec_hammersley(int b, int m, nnld_netspec** out) {
    return guard([&] {
        need(out, "out");
        nnld::DigitalNetSpec spec{
            b, m, {nnld::GeneratorMatrix::identity(b, m), nnld::GeneratorMatrix::reversed_identity(b, m)}};
        spec.validate();
        *out = new nnld_netspec{std::move(spec)};
    });
}

nnld_status nnld_netspec_parse(int b, const char* text, nnld_netspec** out) {
    return guard([&] {
        need(text, "text");
        need(out, "out");
        *out = new nnld_netspec{nnld::parse_generator_lines(b, text)};
    });
}

int nnld_netspec_dim(const nnld_netspec* s) {
    return s ? s->s.dim() : 0;
}

int nnld_netspec_m(const nnld_netspec* s) {
    return s ? s->s.m : 0;
}

int nnld_netspec_base(const nnld_netspec* s) {
    return s ? s->s.base : 0;
}

void nnld_netspec_free(nnld_netspec* s) {
    delete s;
}

nnld_status nnld_rho(const nnld_netspec* s, int* out) {
    return guard([&] {
        need(s, "spec");
        need(out, "out");
        *out = nnld::rho(s->s);
    });
}

nnld_status nnld_verify_net_parameter(const nnld_pointset* p, int b, int m, int t, uint64_t max_ops, int* out) {
    return guard([&] {
        need(p, "p");
        need(out, "out");
        *out = nnld::verify_net_parameter(p->p, b, m, p->p.dim(), t, budget(max_ops)) ? 1 : 0;
    });
}

nnld_status nnld_exact_t(const nnld_pointset* p, int b, int m, uint64_t max_ops, int* out) {
    return guard([&] {
        need(p, "p");
        need(out, "out");
        *out = nnld::exact_t(p->p, b, m, p->p.dim(), budget(max_ops));
    });
}

nnld_status nnld_perm_ordering(int d, int l, int* images, size_t capacity) {
    return guard([&] {
        need(images, "images");
        std::vector<nnld::Permutation> perms;
        if (d == 3)
            perms = nnld::perm_ordering_d3(l);
        else if (d == 4)
            perms = nnld::perm_ordering_d4(l);
        else
            nnld::fail(nnld::ErrorKind::invalid_parameter, "orderings exist for d = 3 and d = 4");
        std::size_t k = 0;
        const std::size_t total = perms.size() * static_cast<std::size_t>(perms[0].size());
        if (capacity < total)
            nnld::fail(nnld::ErrorKind::capacity, "buffer needs " + std::to_string(total) + " ints");
        for (const auto& pi : perms)
            for (int v : pi.images())
                images[k++] = v;
    });
}

nnld_status nnld_t_lower_bound_perm(int d, int m, int* out) {
    return guard([&] {
        need(out, "out");
        *out = nnld::t_lower_bound_perm(d, m);
    });
}

nnld_status nnld_quality_report(const nnld_netspec* s, int verify_t, uint64_t max_ops, char** out) {
    return guard([&] {
        need(s, "spec");
        need(out, "out");
        *out = dup(nnld::format_quality(nnld::quality_report(s->s, verify_t != 0, budget(max_ops))));
    });
}

nnld_status nnld_search_nnld_generators(int m, int b, uint64_t max_ops, int check_prefilter, nnld_search** out) {
    return guard([&] {
        need(out, "out");
        *out = new nnld_search{nnld::search_nnld_generators(m, b, budget(max_ops), check_prefilter != 0)};
    });
}

size_t nnld_search_count(const nnld_search* s) {
    return s ? s->r.matrices.size() : 0;
}

nnld_status nnld_search_matrix(const nnld_search* s, size_t i, char** out) {
    return guard([&] {
        need(s, "search");
        need(out, "out");
        if (i >= s->r.matrices.size())
            nnld::fail(nnld::ErrorKind::invalid_parameter, "matrix index out of range");
        *out = dup(nnld::format_matrix_line(s->r.matrices[i]));
    });
}

uint64_t nnld_search_examined(const nnld_search* s) {
    return s ? s->r.examined : 0;
}

uint64_t nnld_search_passed_prefilter(const nnld_search* s) {
    return s ? s->r.passed_prefilter : 0;
}

uint64_t nnld_search_nonsingular_after_prefilter(const nnld_search* s) {
    return s ? s->r.nonsingular_after_prefilter : 0;
}

int nnld_search_prefilter_checked(const nnld_search* s) {
    return s && s->r.prefilter_checked ? 1 : 0;
}

uint64_t nnld_search_prefilter_misses(const nnld_search* s) {
    return s ? s->r.prefilter_misses : 0;
}

void nnld_search_free(nnld_search* s) {
    delete s;
}

nnld_status nnld_integrand_product(int d, nnld_integrand** out) {
    return guard([&] {
        need(out, "out");
        *out = new nnld_integrand{nnld::product_cm(d)};
    });
}

nnld_status nnld_integrand_bvn(double rho, nnld_integrand** out) {
    return guard([&] {
        need(out, "out");
        *out = new nnld_integrand{nnld::bvn_integrand(rho)};
    });
}

nnld_status nnld_integrand_constant(int d, double c, nnld_integrand** out) {
    return guard([&] {
        need(out, "out");
        *out = new nnld_integrand{nnld::constant_integrand(d, c)};
    });
}

nnld_status nnld_integrand_table(int d, size_t count, const double* weights, const double* locations,
                                 nnld_integrand** out) {
    return guard([&] {
        need(out, "out");
        if (count > 0) {
            need(weights, "weights");
            need(locations, "locations");
        }
        if (d < 1)
            nnld::fail(nnld::ErrorKind::invalid_parameter, "need d >= 1");
        std::vector<nnld::WeightedAtom> atoms;
        for (std::size_t a = 0; a < count; ++a)
            atoms.push_back({weights[a], std::vector<double>(locations + a * static_cast<std::size_t>(d),
                                                             locations + (a + 1) * static_cast<std::size_t>(d))});
        *out = new nnld_integrand{nnld::table_integrand(d, std::move(atoms))};
    });
}

nnld_status nnld_integrand_table_csv(int d, const char* text, nnld_integrand** out) {
    return guard([&] {
        need(text, "text");
        need(out, "out");
        std::istringstream in(text);
        *out = new nnld_integrand{nnld::table_integrand(d, nnld::read_atoms(in, d))};
    });
}

nnld_status nnld_integrand_callback(int d, nnld_eval_fn fn, void* ctx, double f0, double f1,
                                    int nu_absolutely_continuous, double eval_error, const char* name,
                                    nnld_integrand** out) {
    return guard([&] {
        need(out, "out");
        if (fn == nullptr)
            nnld::fail(nnld::ErrorKind::invalid_parameter, "fn must not be NULL");
        if (d < 1)
            nnld::fail(nnld::ErrorKind::invalid_parameter, "need d >= 1");
        if (!(f0 <= f1) || !(eval_error >= 0))
            nnld::fail(nnld::ErrorKind::invalid_parameter, "need f0 <= f1 and eval_error >= 0");
        nnld::CMIntegrand f;
        f.dim = d;
        f.eval = [fn, ctx, d](std::span<const double> x) { return fn(x.data(), d, ctx); };
        f.f0 = f0;
        f.f1 = f1;
        f.nu_absolutely_continuous = nu_absolutely_continuous != 0;
        f.eval_error = eval_error;
        f.name = name ? name : "callback";
        *out = new nnld_integrand{std::move(f)};
    });
}

nnld_status nnld_integrand_named(const char* name, nnld_integrand** out) {
    return guard([&] {
        need(name, "name");
        need(out, "out");
        const std::string s = name;
        if (s == "bvn07") {
            *out = new nnld_integrand{nnld::bvn_integrand(0.7)};
        } else if (s.size() == 8 && s.rfind("product", 0) == 0 && s[7] >= '1' && s[7] <= '9') {
            *out = new nnld_integrand{nnld::product_cm(s[7] - '0')};
        } else if (s == "const") {
            *out = new nnld_integrand{nnld::constant_integrand(1, 1.0)};
        } else {
            nnld::fail(nnld::ErrorKind::invalid_parameter,
                       "unknown integrand '" + s + "' (expected bvn07, product1..product9, const)");
        }
    });
}

void nnld_integrand_free(nnld_integrand* f) {
    delete f;
}

int nnld_integrand_dim(const nnld_integrand* f) {
    return f ? f->f.dim : 0;
}

const char* nnld_integrand_name(const nnld_integrand* f) {
    return f ? f->f.name.c_str() : "";
}

nnld_status nnld_integrand_eval(const nnld_integrand* f, const double* x, double* out) {
    return guard([&] {
        need(f, "f");
        need(x, "x");
        need(out, "out");
        *out = f->f(std::span<const double>(x, static_cast<std::size_t>(f->f.dim)));
    });
}

nnld_status nnld_integrand_exact(const nnld_integrand* f, int* has_exact, double* out) {
    return guard([&] {
        need(f, "f");
        need(has_exact, "has_exact");
        need(out, "out");
        *has_exact = f->f.exact_integral.has_value() ? 1 : 0;
        *out = f->f.exact_integral.value_or(std::nan(""));
    });
}

nnld_status nnld_bvn_cdf(double x1, double x2, double rho, double* out) {
    return guard([&] {
        need(out, "out");
        *out = nnld::bvn_cdf(x1, x2, rho);
    });
}

nnld_status nnld_vhk_2d_smooth(const nnld_integrand* f, double* out) {
    return guard([&] {
        need(f, "f");
        need(out, "out");
        *out = nnld::vhk_2d_smooth(f->f);
    });
}

nnld_status nnld_kh_interval(const nnld_integrand* f, const nnld_pointset* p, const char* dstar,
                             int use_variation, double variation, double* lo, double* hi) {
    return guard([&] {
        need(f, "f");
        need(p, "p");
        need(dstar, "dstar");
        need(lo, "lo");
        need(hi, "hi");
        const auto v = use_variation ? std::optional<double>(variation) : std::nullopt;
        auto [a, b] = nnld::kh_interval(f->f, p->p, nnld::parse_rational(dstar), v);
        *lo = a;
        *hi = b;
    });
}

nnld_status nnld_check_cm_sampled(const nnld_integrand* f, uint64_t trials, uint64_t seed, int* passed,
                                  double* worst, char** worst_subset) {
    return guard([&] {
        need(f, "f");
        need(passed, "passed");
        const auto r = nnld::check_complete_monotone_sampled(f->f, trials, seed);
        *passed = r.passed ? 1 : 0;
        if (worst)
            *worst = r.worst;
        if (worst_subset) {
            std::string s = "{";
            for (std::size_t k = 0; k < r.worst_subset.size(); ++k)
                s += (k ? "," : "") + std::to_string(r.worst_subset[k]);
            *worst_subset = dup(s + "}");
        }
    });
}

nnld_status nnld_upper_bound(const nnld_integrand* f, const nnld_pointset* q, int trust_construction,
                             uint64_t max_ops, double* value, int* certified) {
    return guard([&] {
        need(f, "f");
        need(q, "q");
        need(value, "value");
        const auto side = nnld::upper_bound(f->f, q->p, bound_options(trust_construction, max_ops));
        *value = side.value;
        if (certified)
            *certified = side.status == nnld::SideStatus::certified ? 1 : 0;
    });
}

nnld_status nnld_lower_bound(const nnld_integrand* f, const nnld_pointset* q, int trust_construction,
                             uint64_t max_ops, double* value, int* certified) {
    return guard([&] {
        need(f, "f");
        need(q, "q");
        need(value, "value");
        const auto side = nnld::lower_bound(f->f, q->p, bound_options(trust_construction, max_ops));
        *value = side.value;
        if (certified)
            *certified = side.status == nnld::SideStatus::certified ? 1 : 0;
    });
}

nnld_status nnld_bracket_run(const nnld_integrand* f, int b, int m, int trust_construction, uint64_t max_ops,
                             nnld_bracket** out) {
    return guard([&] {
        need(f, "f");
        need(out, "out");
        *out = new nnld_bracket{nnld::bracket(f->f, b, m, bound_options(trust_construction, max_ops))};
    });
}

int nnld_bracket_has_lower(const nnld_bracket* r) {
    return r && r->r.lower ? 1 : 0;
}

double nnld_bracket_lower(const nnld_bracket* r) {
    return r && r->r.lower ? r->r.lower->value : std::nan("");
}

double nnld_bracket_upper(const nnld_bracket* r) {
    return r ? r->r.upper.value : std::nan("");
}

int64_t nnld_bracket_n(const nnld_bracket* r) {
    return r ? r->r.n : 0;
}

int64_t nnld_bracket_evaluations(const nnld_bracket* r) {
    return r ? r->r.evaluations : 0;
}

nnld_status nnld_bracket_describe(const nnld_bracket* r, char** out) {
    return guard([&] {
        need(r, "r");
        need(out, "out");
        const auto& u = r->r.upper;
        std::string s = "side=upper status=" + std::string(nnld::to_string(u.status)) + " points=" + u.provenance + "\n";
        if (r->r.lower)
            s += "side=lower status=" + std::string(nnld::to_string(r->r.lower->status)) +
                 " points=" + r->r.lower->provenance + "\n";
        else
            s += "side=lower status=unavailable reason=" + r->r.lower_note + "\n";
        s += "eval_error=" + nnld::format_double(r->r.eval_error) + "\n";
        *out = dup(s);
    });
}

nnld_status nnld_bracket_csv_row(const nnld_bracket* r, int m, char** out) {
    return guard([&] {
        need(r, "r");
        need(out, "out");
        *out = dup(nnld::bracket_csv_row(m, r->r));
    });
}

const char* nnld_bracket_csv_header(void) {
    static const std::string header = nnld::bracket_csv_header();
    return header.c_str();
}

void nnld_bracket_free(nnld_bracket* r) {
    delete r;
}

nnld_status nnld_figure2_csv(int m_lo, int m_hi, int trust_construction, uint64_t max_ops, char** out) {
    return guard([&] {
        need(out, "out");
        std::string s = nnld::figure2_csv_header() + "\n";
        for (const auto& row : nnld::figure2_rows(m_lo, m_hi, bound_options(trust_construction, max_ops)))
            s += nnld::figure2_csv_row(row) + "\n";
        *out = dup(s);
    });
}

} // extern "C"
