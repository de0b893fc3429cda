#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "stabilyze.h"

namespace fs = std::filesystem;

TEST_CASE("params handles: creation, chi, validation errors") {
  stz_params* p = nullptr;
  REQUIRE(stz_params_create(1, 1, 1, 1, 1, 1, 1, 0.5, &p) == STZ_OK);
  CHECK(stz_params_chi(p) == 0.0);
  CHECK(stz_params_gamma(p) == 0.5);
  stz_params_free(p);

  stz_params* q = nullptr;
  CHECK(stz_params_create(1, 1, 1, 1, -1, 1, 1, 0.5, &q) == STZ_E_INVALID);
  CHECK(std::string(stz_last_error()).find("positive") != std::string::npos);
  CHECK(stz_params_create_chi(1, 1, 1, 1, 5.0, 1, 1, 0.5, &q) == STZ_E_INVALID);
  CHECK(stz_params_create_chi(2, 1, 1, 4, 1.0, 1, 1, 0.5, &q) == STZ_OK);
  CHECK(stz_params_chi(q) == doctest::Approx(1.0));
  stz_params_free(q);
}

TEST_CASE("spectrum handles") {
  stz_spectrum* s = nullptr;
  REQUIRE(stz_spectrum_dirichlet(3.141592653589793, 10, &s) == STZ_OK);
  CHECK(stz_spectrum_size(s) == 10);
  std::vector<double> vals(10);
  REQUIRE(stz_spectrum_values(s, vals.data(), vals.size()) == STZ_OK);
  CHECK(vals[0] == doctest::Approx(1.0));
  CHECK(vals[9] == doctest::Approx(100.0));
  CHECK(stz_spectrum_values(s, vals.data(), 3) == STZ_E_INVALID);
  stz_spectrum_free(s);

  const double bad[] = {2.0, 1.0};
  CHECK(stz_spectrum_explicit(bad, 2, &s) == STZ_E_INVALID);
  CHECK(stz_spectrum_loggrid(-1.0, 10.0, 5, &s) == STZ_E_INVALID);
}

TEST_CASE("block handles expose the modal matrices") {
  stz_params* p = nullptr;
  REQUIRE(stz_params_create(1, 1, 1, 1, 1, 1, 1, 0.5, &p) == STZ_OK);
  stz_block* b = nullptr;
  REQUIRE(stz_block_timoshenko(p, 1.0, &b) == STZ_OK);
  CHECK(stz_block_dim(b) == 5);

  double L[25];
  REQUIRE(stz_block_matrix(b, 'L', L, 25) == STZ_OK);
  const double expect[25] = {0, 1, 0,  0, 0, -1, 0, -1, 0, 0, 0, 0, 0,
                             1, 0, -1, 0, -2, 0, 1, 0,  0, 0, -1, -1};
  for (int i = 0; i < 25; ++i) CHECK(L[i] == expect[i]);

  double M[25];
  REQUIRE(stz_block_matrix(b, 'M', M, 25) == STZ_OK);
  CHECK(M[24] == doctest::Approx(-1.0));
  CHECK(stz_block_matrix(b, 'X', M, 25) == STZ_E_INVALID);

  double re[5], im[5];
  REQUIRE(stz_block_eigenvalues(b, re, im, 5) == STZ_OK);
  double trace = 0;
  for (int i = 0; i < 5; ++i) trace += re[i];
  CHECK(trace == doctest::Approx(-1.0).epsilon(1e-9));

  double absc = 0;
  REQUIRE(stz_block_spectral_abscissa(b, &absc) == STZ_OK);
  CHECK(absc == doctest::Approx(-0.08349030868603136).epsilon(1e-9));

  stz_block_free(b);

  stz_block* w = nullptr;
  REQUIRE(stz_block_waveheat(0.0, 1.0, &w) == STZ_OK);
  CHECK(stz_block_dim(w) == 3);
  stz_block_free(w);
  CHECK(stz_block_timoshenko(p, -1.0, &b) == STZ_E_INVALID);
  stz_params_free(p);
}

TEST_CASE("explicit inverse through the C surface") {
  stz_params* p = nullptr;
  REQUIRE(stz_params_create(1, 1, 1, 1, 1, 1, 1, 0.5, &p) == STZ_OK);
  const double f[5] = {0.3, -1.2, 0.7, 0.1, -0.4};
  double z[5];
  REQUIRE(stz_explicit_inverse_apply(p, 2.0, f, z) == STZ_OK);
  // residual against the physical generator
  stz_block* b = nullptr;
  REQUIRE(stz_block_timoshenko(p, 2.0, &b) == STZ_OK);
  double L[25];
  stz_block_matrix(b, 'L', L, 25);
  for (int i = 0; i < 5; ++i) {
    double acc = 0;
    for (int j = 0; j < 5; ++j) acc += L[i * 5 + j] * z[j];
    CHECK(acc == doctest::Approx(f[i]).epsilon(1e-10));
  }
  stz_block_free(b);
  stz_params_free(p);
}

TEST_CASE("classification through the C surface") {
  stz_params* p = nullptr;
  REQUIRE(stz_params_create_chi(1, 1, 1, 1, 0.0, 1, 1, 0.5, &p) == STZ_OK);
  stz_spectrum* s = nullptr;
  REQUIRE(stz_spectrum_loggrid(1.0, 1e4, 20, &s) == STZ_OK);

  stz_classify_options opts;
  stz_classify_options_init(&opts);
  CHECK(opts.margin_threshold == 1e-6);
  opts.lambda_count = 60;
  opts.decay_t_count = 8;
  opts.workers = 2;

  stz_report* rep = nullptr;
  REQUIRE(stz_classify(0, p, s, &opts, &rep) == STZ_OK);
  CHECK(stz_report_classification(rep) == STZ_EXPONENTIAL);
  CHECK(std::strcmp(stz_report_classification_str(rep), "Exponential") == 0);
  CHECK(stz_report_agree(rep) == 1);
  CHECK(stz_report_sup_abscissa(rep) < -1e-3);
  CHECK(stz_report_pruss_margin(rep) > 1e-6);
  double exp_val = 0;
  CHECK(stz_report_inverse_growth_exponent(rep, &exp_val) == 0);  // bounded
  CHECK(stz_report_witness_exponent(rep, &exp_val) == 0);        // stable point
  stz_report_free(rep);

  // wave-heat route
  stz_report* wrep = nullptr;
  REQUIRE(stz_classify(1, p, s, &opts, &wrep) == STZ_OK);
  CHECK(stz_report_classification(wrep) == STZ_EXPONENTIAL);
  stz_report_free(wrep);

  stz_spectrum_free(s);
  stz_params_free(p);
}

TEST_CASE("run_command through the C surface") {
  const fs::path tmp = fs::temp_directory_path() / "stz_capi_run";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  const fs::path cfg = tmp / "run.ini";
  std::ofstream(cfg) << "[params]\ngamma = 1\nchi = 0\n[spectrum]\nkind = loggrid\n"
                     << "alpha_min = 1e4\nalpha_max = 1e6\ncount = 10\n";

  int code = -1;
  REQUIRE(stz_run_command("witness", cfg.string().c_str(), tmp.string().c_str(), 1, 0, &code) ==
          STZ_OK);
  CHECK(code == 0);
  CHECK(fs::exists(tmp / "witness_1_0.csv"));

  REQUIRE(stz_run_command("classify", (tmp / "missing.ini").string().c_str(),
                          tmp.string().c_str(), 1, 0, &code) == STZ_OK);
  CHECK(code == 1);

  CHECK(stz_run_command(nullptr, "x", "y", 1, 0, &code) == STZ_E_INVALID);
  fs::remove_all(tmp);
}
