#include "stabilyze.h"

#include <cstring>
#include <new>
#include <string>

#include "dynamics.hpp"
#include "report.hpp"

using namespace stabilyze;

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

template <typename Fn>
stz_status guarded(Fn&& fn) {
  try {
    fn();
    return STZ_OK;
  } catch (const ConfigError& e) {
    set_error(e.what());
    return STZ_E_CONFIG;
  } catch (const NumericalError& e) {
    set_error(e.what());
    return STZ_E_NUMERIC;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return STZ_E_INVALID;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return STZ_E_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return STZ_E_IO;
  }
}

stz_classification to_c(Classification c) {
  switch (c) {
    case Classification::Exponential: return STZ_EXPONENTIAL;
    case Classification::Semiuniform: return STZ_SEMIUNIFORM;
    case Classification::StableOnly: return STZ_STABLE_ONLY;
    case Classification::NotSemiuniform: return STZ_NOT_SEMIUNIFORM;
    case Classification::Indeterminate: return STZ_INDETERMINATE;
  }
  return STZ_INDETERMINATE;
}

}  // namespace

struct stz_params {
  SystemParams p;
};
struct stz_spectrum {
  Spectrum s;
};
struct stz_block {
  ModalBlock b;
};
struct stz_report {
  StabilityReport r;
  std::string classification_str;
};

extern "C" {

const char* stz_version(void) { return "0.1.0"; }

const char* stz_status_str(stz_status status) {
  switch (status) {
    case STZ_OK: return "ok";
    case STZ_E_INVALID: return "invalid argument";
    case STZ_E_CONFIG: return "config error";
    case STZ_E_NUMERIC: return "numerical failure";
    case STZ_E_IO: return "io error";
  }
  return "unknown";
}

const char* stz_last_error(void) { return g_last_error.c_str(); }

stz_status stz_params_create(double rho1, double rho2, double rho3, double a, double b, double c,
                             double delta, double gamma, stz_params** out) {
  if (!out) {
    set_error("out pointer is null");
    return STZ_E_INVALID;
  }
  return guarded([&] {
    SystemParams p{rho1, rho2, rho3, a, b, c, delta, gamma};
    p.validate();
    *out = new stz_params{p};
  });
}

stz_status stz_params_create_chi(double rho1, double rho2, double rho3, double a, double chi,
                                 double c, double delta, double gamma, stz_params** out) {
  if (!out) {
    set_error("out pointer is null");
    return STZ_E_INVALID;
  }
  return guarded([&] {
    *out = new stz_params{SystemParams::from_chi(rho1, rho2, rho3, a, chi, c, delta, gamma)};
  });
}

void stz_params_free(stz_params* params) { delete params; }

double stz_params_chi(const stz_params* params) { return params ? params->p.chi() : 0.0; }
double stz_params_gamma(const stz_params* params) { return params ? params->p.gamma : 0.0; }

stz_status stz_spectrum_explicit(const double* values, size_t count, stz_spectrum** out) {
  if (!out || !values) {
    set_error("null pointer argument");
    return STZ_E_INVALID;
  }
  return guarded([&] {
    *out = new stz_spectrum{Spectrum::explicit_list(std::vector<double>(values, values + count))};
  });
}

stz_status stz_spectrum_dirichlet(double ell, int n_max, stz_spectrum** out) {
  if (!out) {
    set_error("out pointer is null");
    return STZ_E_INVALID;
  }
  return guarded([&] { *out = new stz_spectrum{Spectrum::dirichlet(ell, n_max)}; });
}

stz_status stz_spectrum_geometric(double alpha0, double ratio, int count, stz_spectrum** out) {
  if (!out) {
    set_error("out pointer is null");
    return STZ_E_INVALID;
  }
  return guarded([&] { *out = new stz_spectrum{Spectrum::geometric(alpha0, ratio, count)}; });
}

stz_status stz_spectrum_loggrid(double alpha_min, double alpha_max, int count, stz_spectrum** out) {
  if (!out) {
    set_error("out pointer is null");
    return STZ_E_INVALID;
  }
  return guarded([&] { *out = new stz_spectrum{Spectrum::log_grid(alpha_min, alpha_max, count)}; });
}

void stz_spectrum_free(stz_spectrum* spectrum) { delete spectrum; }

size_t stz_spectrum_size(const stz_spectrum* spectrum) { return spectrum ? spectrum->s.size() : 0; }

stz_status stz_spectrum_values(const stz_spectrum* spectrum, double* buffer, size_t capacity) {
  if (!spectrum || !buffer) {
    set_error("null pointer argument");
    return STZ_E_INVALID;
  }
  if (capacity < spectrum->s.size()) {
    set_error("buffer too small");
    return STZ_E_INVALID;
  }
  std::memcpy(buffer, spectrum->s.values().data(), spectrum->s.size() * sizeof(double));
  return STZ_OK;
}

stz_status stz_block_timoshenko(const stz_params* params, double alpha, stz_block** out) {
  if (!params || !out) {
    set_error("null pointer argument");
    return STZ_E_INVALID;
  }
  return guarded([&] { *out = new stz_block{timoshenko_block(params->p, alpha)}; });
}

stz_status stz_block_waveheat(double gamma, double alpha, stz_block** out) {
  if (!out) {
    set_error("out pointer is null");
    return STZ_E_INVALID;
  }
  return guarded([&] { *out = new stz_block{waveheat_block(gamma, alpha)}; });
}

void stz_block_free(stz_block* block) { delete block; }

int stz_block_dim(const stz_block* block) { return block ? block->b.dim : 0; }

stz_status stz_block_matrix(const stz_block* block, char which, double* buffer, size_t capacity) {
  if (!block || !buffer) {
    set_error("null pointer argument");
    return STZ_E_INVALID;
  }
  const int n = block->b.dim;
  if (capacity < static_cast<size_t>(n) * n) {
    set_error("buffer too small");
    return STZ_E_INVALID;
  }
  const Mat* src = nullptr;
  switch (which) {
    case 'L': src = &block->b.L; break;
    case 'M': src = &block->b.M; break;
    case 'T': src = &block->b.T; break;
    default: set_error("which must be 'L', 'M' or 'T'"); return STZ_E_INVALID;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) buffer[i * n + j] = (*src)(i, j);
  return STZ_OK;
}

stz_status stz_block_eigenvalues(const stz_block* block, double* real_parts, double* imag_parts,
                                 size_t capacity) {
  if (!block || !real_parts || !imag_parts) {
    set_error("null pointer argument");
    return STZ_E_INVALID;
  }
  if (capacity < static_cast<size_t>(block->b.dim)) {
    set_error("buffer too small");
    return STZ_E_INVALID;
  }
  return guarded([&] {
    const auto evs = linalg::eigenvalues(block->b.M);
    for (std::size_t i = 0; i < evs.size(); ++i) {
      real_parts[i] = evs[i].real();
      imag_parts[i] = evs[i].imag();
    }
  });
}

stz_status stz_block_spectral_abscissa(const stz_block* block, double* out) {
  if (!block || !out) {
    set_error("null pointer argument");
    return STZ_E_INVALID;
  }
  return guarded([&] { *out = spectral_abscissa(block->b); });
}

stz_status stz_explicit_inverse_apply(const stz_params* params, double alpha, const double f[5],
                                      double z[5]) {
  if (!params || !f || !z) {
    set_error("null pointer argument");
    return STZ_E_INVALID;
  }
  return guarded([&] {
    Vec fv(5);
    for (int i = 0; i < 5; ++i) fv(i) = f[i];
    const Vec zv = explicit_inverse_apply(params->p, alpha, fv);
    for (int i = 0; i < 5; ++i) z[i] = zv(i);
  });
}

void stz_classify_options_init(stz_classify_options* options) {
  if (!options) return;
  const ClassifyOptions d;
  options->margin_threshold = d.margin_threshold;
  options->abscissa_threshold = d.abscissa_threshold;
  options->decay_threshold = d.decay_threshold;
  options->trend_threshold = d.trend_threshold;
  options->lambda_count = d.lambda_count;
  options->lambda_min = d.lambda_min;
  options->decay_alpha_cap = d.decay_alpha_cap;
  options->decay_t_min = d.decay_t_min;
  options->decay_t_max = d.decay_t_max;
  options->decay_t_count = d.decay_t_count;
  options->workers = d.workers;
}

stz_status stz_classify(int model, const stz_params* params, const stz_spectrum* spectrum,
                        const stz_classify_options* options, stz_report** out) {
  if (!params || !spectrum || !out) {
    set_error("null pointer argument");
    return STZ_E_INVALID;
  }
  return guarded([&] {
    ClassifyOptions opts;
    if (options) {
      opts.margin_threshold = options->margin_threshold;
      opts.abscissa_threshold = options->abscissa_threshold;
      opts.decay_threshold = options->decay_threshold;
      opts.trend_threshold = options->trend_threshold;
      opts.lambda_count = options->lambda_count;
      opts.lambda_min = options->lambda_min;
      opts.decay_alpha_cap = options->decay_alpha_cap;
      opts.decay_t_min = options->decay_t_min;
      opts.decay_t_max = options->decay_t_max;
      opts.decay_t_count = options->decay_t_count;
      opts.workers = options->workers;
    }
    const Model m = model == 1 ? Model::waveheat(params->p.gamma) : Model::timoshenko(params->p);
    StabilityReport rep = classify(m, spectrum->s, opts);
    auto* handle = new stz_report{std::move(rep), ""};
    handle->classification_str = to_string(handle->r.classification);
    *out = handle;
  });
}

void stz_report_free(stz_report* report) { delete report; }

stz_classification stz_report_classification(const stz_report* report) {
  return report ? to_c(report->r.classification) : STZ_INDETERMINATE;
}

stz_classification stz_report_prediction(const stz_report* report) {
  return report ? to_c(report->r.analytic_prediction) : STZ_INDETERMINATE;
}

const char* stz_report_classification_str(const stz_report* report) {
  return report ? report->classification_str.c_str() : "";
}

int stz_report_agree(const stz_report* report) { return report && report->r.agree ? 1 : 0; }

double stz_report_sup_abscissa(const stz_report* report) {
  return report ? report->r.sup_abscissa : 0.0;
}

double stz_report_pruss_margin(const stz_report* report) {
  return report ? report->r.pruss_margin : 0.0;
}

double stz_report_margin_trend(const stz_report* report) {
  return report ? report->r.margin_trend : 0.0;
}

int stz_report_inverse_growth_exponent(const stz_report* report, double* out) {
  if (!report || !out || !report->r.inverse_growth_exponent) return 0;
  *out = *report->r.inverse_growth_exponent;
  return 1;
}

int stz_report_witness_exponent(const stz_report* report, double* out) {
  if (!report || !out || !report->r.witness_exponent_fit) return 0;
  *out = *report->r.witness_exponent_fit;
  return 1;
}

stz_status stz_run_command(const char* command, const char* config_path, const char* out_dir,
                           int workers, int resume, int* exit_code) {
  if (!command || !config_path || !exit_code) {
    set_error("null pointer argument");
    return STZ_E_INVALID;
  }
  return guarded([&] {
    *exit_code = run_command(command, config_path, out_dir ? out_dir : "", workers, resume != 0);
  });
}

}  // extern "C"
