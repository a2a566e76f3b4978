#include "nnld/nnld.h"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace {

std::string take(char* s) {
    std::string r = s ? s : "";
    nnld_string_free(s);
    return r;
}

double coordinate_sum(const double* x, int d, void*) {
    double v = 0;
    for (int j = 0; j < d; ++j)
        v += x[j];
    return v;
}

} // namespace

TEST_SUITE("c_api") {

TEST_CASE("point sets through handles") {
    nnld_pointset* h = nullptr;
    REQUIRE(nnld_hammersley(2, 3, &h) == NNLD_OK);
    CHECK(nnld_pointset_dim(h) == 2);
    CHECK(nnld_pointset_size(h) == 8);
    CHECK(nnld_pointset_denominator(h) == 8);
    CHECK(nnld_pointset_guarantee(h) == NNLD_GUARANTEE_NNLD);
    CHECK(std::string(nnld_pointset_provenance(h)) == "hammersley(b=2,m=3)");
    std::int64_t v = -1;
    CHECK(nnld_pointset_numerator(h, 1, 1, &v) == NNLD_OK);
    CHECK(v == 4);
    CHECK(nnld_pointset_numerator(h, 8, 0, &v) == NNLD_ERR_INVALID);

    char* csv = nullptr;
    REQUIRE(nnld_pointset_to_csv(h, &csv) == NNLD_OK);
    nnld_pointset* back = nullptr;
    REQUIRE(nnld_pointset_from_csv(csv, &back) == NNLD_OK);
    nnld_string_free(csv);
    int same = 0;
    CHECK(nnld_pointset_same_multiset(h, back, &same) == NNLD_OK);
    CHECK(same == 1);

    const int images[] = {1, 2, 3, 3, 2, 1};
    nnld_pointset* p = nullptr;
    REQUIRE(nnld_permutation_net(2, 3, 2, images, &p) == NNLD_OK);
    CHECK(nnld_pointset_same_multiset(p, h, &same) == NNLD_OK);
    CHECK(same == 1);

    nnld_pointset* prod = nullptr;
    REQUIRE(nnld_cartesian_product(h, p, &prod) == NNLD_OK);
    CHECK(nnld_pointset_size(prod) == 64);
    CHECK(nnld_pointset_dim(prod) == 4);

    nnld_pointset* bad = nullptr;
    CHECK(nnld_hammersley(2, 50, &bad) == NNLD_ERR_CAPACITY);
    CHECK(bad == nullptr);
    CHECK(std::string(nnld_last_error()).size() > 0);
    CHECK(nnld_grid_1d(0, &bad) == NNLD_ERR_INVALID);
    CHECK(nnld_npld_transform(prod, &bad) == NNLD_ERR_INVALID);
    CHECK(nnld_pointset_from_csv("# d=1 n=2 den=2 provenance=x\n0\n", &bad) == NNLD_ERR_PARSE);
    CHECK(nnld_pointset_read_csv_file("/nonexistent/x.csv", &bad) == NNLD_ERR_IO);
    CHECK(nnld_hammersley(2, 3, nullptr) == NNLD_ERR_INVALID);
    const std::int64_t over[] = {0, 5};
    CHECK(nnld_pointset_from_numerators(1, 4, 2, over, &bad) == NNLD_ERR_INVALID);
    nnld_pointset* edge = nullptr;
    const std::int64_t top[] = {0, 4};
    REQUIRE(nnld_pointset_from_numerators(1, 4, 2, top, &edge) == NNLD_OK);
    CHECK(nnld_shift_reflect(edge, &bad) == NNLD_ERR_PRECONDITION);

    for (auto* q : {h, back, p, prod, edge})
        nnld_pointset_free(q);
    nnld_pointset_free(nullptr);
    CHECK(std::string(nnld_status_name(NNLD_ERR_REFUSED)) == "refused");
}

TEST_CASE("discrepancy through handles") {
    nnld_pointset* fib = nullptr;
    const std::int64_t g[] = {1, 2};
    REQUIRE(nnld_rank1_lattice(5, 2, g, &fib) == NNLD_OK);
    nnld_report* r = nullptr;
    REQUIRE(nnld_verify_nnld(fib, 0, &r) == NNLD_OK);
    CHECK(nnld_report_verdict(r) == NNLD_VERDICT_REFUTED);
    CHECK(nnld_report_certified(r) == 0);
    char* s = nullptr;
    REQUIRE(nnld_report_delta(r, &s) == NNLD_OK);
    CHECK(take(s) == "-1/25");
    REQUIRE(nnld_report_corner(r, 0, &s) == NNLD_OK);
    CHECK(take(s) == "4/5");
    CHECK(nnld_report_corner(r, 2, &s) == NNLD_ERR_INVALID);
    REQUIRE(nnld_report_format(r, &s) == NNLD_OK);
    CHECK(take(s).rfind("verdict=refuted witness=4/5,4/5 delta=-1/25 boxes=", 0) == 0);
    nnld_report_free(r);

    const char* z[] = {"4/5", "4/5"};
    REQUIRE(nnld_local_disc(fib, z, 0, &s) == NNLD_OK);
    CHECK(take(s) == "-1/25");
    const char* junk[] = {"4/x", "1"};
    CHECK(nnld_local_disc(fib, junk, 0, &s) == NNLD_ERR_PARSE);

    int all = 1;
    REQUIRE(nnld_structural_prechecks(fib, &all, &s) == NNLD_OK);
    CHECK(all == 0);
    CHECK(take(s).find("contains ((n-1)/n)*1 (projection regular): fail") != std::string::npos);

    nnld_pointset* h = nullptr;
    REQUIRE(nnld_hammersley(2, 4, &h) == NNLD_OK);
    REQUIRE(nnld_star_discrepancy(h, 0, &s, &r) == NNLD_OK);
    CHECK(take(s) == "11/64");
    CHECK(nnld_report_verdict(r) == NNLD_VERDICT_STAR_VALUE);
    nnld_report_free(r);
    REQUIRE(nnld_hammersley_star_disc_formula(2, &s) == NNLD_OK);
    CHECK(take(s) == "3/16");
    CHECK(nnld_verify_nnld(h, 3, &r) == NNLD_ERR_BUDGET);
    int reg = 0;
    CHECK(nnld_is_projection_regular(h, &reg) == NNLD_OK);
    CHECK(reg == 1);

    nnld_pointset* t = nullptr;
    REQUIRE(nnld_npld_transform(h, &t) == NNLD_OK);
    REQUIRE(nnld_verify_npld(t, 0, &r) == NNLD_OK);
    CHECK(nnld_report_verdict(r) == NNLD_VERDICT_CERTIFIED_NPLD);
    nnld_report_free(r);
    nnld_pointset_free(t);
    nnld_pointset_free(h);
    nnld_pointset_free(fib);
}

TEST_CASE("net quality through handles") {
    nnld_netspec* s = nullptr;
    REQUIRE(nnld_netspec_hammersley(2, 4, &s) == NNLD_OK);
    int rho = 0;
    CHECK(nnld_rho(s, &rho) == NNLD_OK);
    CHECK(rho == 4);
    char* text = nullptr;
    REQUIRE(nnld_quality_report(s, 1, 0, &text) == NNLD_OK);
    CHECK(take(text) == "rho=4 t=0 t_verified=0 bound_ok=true");
    nnld_netspec_free(s);

    std::vector<int> images(3 * 3 * 2);
    REQUIRE(nnld_perm_ordering(3, 2, images.data(), images.size()) == NNLD_OK);
    CHECK(nnld_perm_ordering(3, 2, images.data(), 5) == NNLD_ERR_CAPACITY);
    CHECK(nnld_perm_ordering(5, 1, images.data(), images.size()) == NNLD_ERR_INVALID);
    REQUIRE(nnld_netspec_from_permutations(2, 6, 3, images.data(), &s) == NNLD_OK);
    REQUIRE(nnld_quality_report(s, 1, 0, &text) == NNLD_OK);
    CHECK(take(text) == "rho=4 t=2 t_verified=2 bound_ok=true");
    nnld_pointset* p = nullptr;
    REQUIRE(nnld_digital_net(s, &p) == NNLD_OK);
    int t = -1;
    CHECK(nnld_exact_t(p, 2, 6, 0, &t) == NNLD_OK);
    CHECK(t == 2);
    int ok = 0;
    CHECK(nnld_verify_net_parameter(p, 2, 6, 1, 0, &ok) == NNLD_OK);
    CHECK(ok == 0);
    nnld_pointset_free(p);
    nnld_netspec_free(s);

    CHECK(nnld_t_lower_bound_perm(3, 6, &t) == NNLD_OK);
    CHECK(t == 1);

    const int comp[] = {2, 1, 3, 1, 1, 0, 0, 1};
    REQUIRE(nnld_netspec_create(6, 2, 2, comp, &s) == NNLD_OK);
    CHECK(nnld_rho(s, &rho) == NNLD_ERR_UNSUPPORTED);
    nnld_netspec_free(s);

    CHECK(nnld_netspec_parse(2, "1000010000100001\n0001001001001000\n", &s) == NNLD_OK);
    CHECK(nnld_netspec_dim(s) == 2);
    CHECK(nnld_netspec_m(s) == 4);
    CHECK(nnld_netspec_base(s) == 2);
    nnld_netspec_free(s);

    nnld_search* sr = nullptr;
    REQUIRE(nnld_search_nnld_generators(3, 2, 0, 1, &sr) == NNLD_OK);
    CHECK(nnld_search_prefilter_checked(sr) == 1);
    CHECK(nnld_search_prefilter_misses(sr) == 0);
    CHECK(nnld_search_count(sr) > 0);
    REQUIRE(nnld_search_matrix(sr, 0, &text) == NNLD_OK);
    CHECK(take(text).size() == 9);
    CHECK(nnld_search_matrix(sr, nnld_search_count(sr), &text) == NNLD_ERR_INVALID);
    nnld_search_free(sr);
}

TEST_CASE("integrands and brackets through handles") {
    nnld_integrand* f = nullptr;
    REQUIRE(nnld_integrand_named("bvn07", &f) == NNLD_OK);
    CHECK(nnld_integrand_dim(f) == 2);
    double v = 0;
    CHECK(nnld_vhk_2d_smooth(f, &v) == NNLD_OK);
    CHECK(std::abs(v - 0.7261234) < 1e-6);
    int passed = 0;
    double worst = 0;
    char* subset = nullptr;
    CHECK(nnld_check_cm_sampled(f, 500, 1, &passed, &worst, &subset) == NNLD_OK);
    CHECK(passed == 1);
    nnld_string_free(subset);

    nnld_bracket* br = nullptr;
    REQUIRE(nnld_bracket_run(f, 2, 6, 0, 0, &br) == NNLD_OK);
    CHECK(nnld_bracket_has_lower(br) == 1);
    CHECK(nnld_bracket_lower(br) <= nnld_bracket_upper(br));
    CHECK(nnld_bracket_n(br) == 64);
    CHECK(nnld_bracket_evaluations(br) == 128);
    char* text = nullptr;
    REQUIRE(nnld_bracket_describe(br, &text) == NNLD_OK);
    const std::string desc = take(text);
    CHECK(desc.find("side=upper status=certified points=hammersley(b=2,m=6)") != std::string::npos);
    REQUIRE(nnld_bracket_csv_row(br, 6, &text) == NNLD_OK);
    CHECK(take(text).rfind("6,64,", 0) == 0);
    CHECK(std::string(nnld_bracket_csv_header()) == "m,n,lower,upper,width,n_width,n_width_over_log_n");
    nnld_bracket_free(br);
    nnld_integrand_free(f);

    CHECK(nnld_integrand_named("nope", &f) == NNLD_ERR_INVALID);
    CHECK(nnld_integrand_bvn(1.0, &f) == NNLD_ERR_INVALID);

    REQUIRE(nnld_integrand_callback(2, coordinate_sum, nullptr, 0, 2, 1, 0, "sum", &f) == NNLD_OK);
    nnld_pointset* h = nullptr;
    REQUIRE(nnld_hammersley(2, 4, &h) == NNLD_OK);
    int cert = 0;
    REQUIRE(nnld_upper_bound(f, h, 0, 0, &v, &cert) == NNLD_OK);
    CHECK(cert == 1);
    CHECK(v >= 1.0);
    double lo = 0, hi = 0;
    REQUIRE(nnld_kh_interval(f, h, "1/16", 1, 2.0, &lo, &hi) == NNLD_OK);
    CHECK(std::abs((hi - lo) - 0.25) < 1e-15);
    CHECK(nnld_lower_bound(f, h, 0, 0, &v, &cert) == NNLD_ERR_REFUSED);
    nnld_integrand_free(f);

    const double w[] = {1.0};
    const double loc[] = {0.25, 0.5};
    REQUIRE(nnld_integrand_table(2, 1, w, loc, &f) == NNLD_OK);
    int has = 0;
    CHECK(nnld_integrand_exact(f, &has, &v) == NNLD_OK);
    CHECK(has == 1);
    CHECK(v == 0.375);
    nnld_integrand_free(f);
    nnld_pointset_free(h);

    CHECK(nnld_integrand_table_csv(2, "1,0.5\n", &f) == NNLD_ERR_PARSE);
    CHECK(nnld_bvn_cdf(0, 0, 0.7, &v) == NNLD_OK);
    CHECK(std::abs(v - 0.37340834444668247) < 1e-15);

    char* csv = nullptr;
    REQUIRE(nnld_figure2_csv(3, 4, 1, 0, &csv) == NNLD_OK);
    const std::string fig = take(csv);
    CHECK(fig.rfind("m,n,lower,upper,width,dstar_2n,", 0) == 0);
    CHECK(fig.find("\n3,8,") != std::string::npos);
    CHECK(fig.find("\n4,16,") != std::string::npos);
}

}
