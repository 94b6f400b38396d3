#include "qprob/qprob.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <utility>

#include "qprob/error.hpp"
#include "qprob/field.hpp"
#include "qprob/grid.hpp"
#include "qprob/integral.hpp"
#include "qprob/measure.hpp"
#include "qprob/observable.hpp"
#include "qprob/runners.hpp"

struct qp_domain {
  qprob::GridDomain domain;
};

struct qp_field {
  qprob::ScalarField field;
};

struct qp_measure {
  std::unique_ptr<qprob::QuasiMeasure> measure;
};

namespace {

thread_local std::string g_last_error = "no error";

qp_status classify(const qprob::Error& error) {
  switch (error.code()) {
    case qprob::ErrorCode::ParseError:
      return QP_ERROR_PARSE;
    case qprob::ErrorCode::InvalidArgument:
    case qprob::ErrorCode::BadFormat:
    case qprob::ErrorCode::EvenResolution:
    case qprob::ErrorCode::ResolutionOutOfRange:
      return QP_ERROR_ARGUMENT;
    default:
      return QP_ERROR_PRECONDITION;
  }
}

template <class Body>
qp_status guarded(Body&& body) {
  try {
    return body();
  } catch (const qprob::Error& error) {
    g_last_error = error.what();  // already prefixed with the code name
    return classify(error);
  } catch (const std::exception& error) {
    g_last_error = error.what();
    return QP_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QP_ERROR_INTERNAL;
  }
}

qp_status argument_error(const char* message) {
  g_last_error = message;
  return QP_ERROR_ARGUMENT;
}

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out != nullptr) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

qp_status emit_string(const std::string& text, char** out) {
  *out = dup_string(text);
  if (*out == nullptr) {
    g_last_error = "allocation failed";
    return QP_ERROR_INTERNAL;
  }
  return QP_OK;
}

/// Shared tail of the check-style backends: serialize, surface the verdict.
qp_status emit_report(const nlohmann::ordered_json& report, char** out_json,
                      int32_t* out_pass) {
  if (out_pass != nullptr) {
    *out_pass = report.value("pass", false) ? 1 : 0;
  }
  return emit_string(report.dump(2) + "\n", out_json);
}

}  // namespace

extern "C" {

const char* qp_status_name(qp_status status) {
  switch (status) {
    case QP_OK:
      return "ok";
    case QP_ERROR_ARGUMENT:
      return "argument";
    case QP_ERROR_PARSE:
      return "parse";
    case QP_ERROR_PRECONDITION:
      return "precondition";
    case QP_ERROR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* qp_version(void) { return "0.1.0"; }

const char* qp_last_error(void) { return g_last_error.c_str(); }

void qp_string_free(char* text) { std::free(text); }

void qp_buffer_free(void* buffer) { std::free(buffer); }

qp_status qp_domain_create(int32_t resolution, qp_domain** out) {
  if (out == nullptr) return argument_error("out is NULL");
  return guarded([&] {
    *out = new qp_domain{qprob::make_domain(resolution)};
    return QP_OK;
  });
}

void qp_domain_destroy(qp_domain* domain) { delete domain; }

int32_t qp_domain_resolution(const qp_domain* domain) {
  return domain == nullptr ? 0 : domain->domain.resolution();
}

qp_status qp_field_from_expression(const qp_domain* domain, const char* expr,
                                   qp_field** out) {
  if (domain == nullptr) return argument_error("domain is NULL");
  if (expr == nullptr) return argument_error("expr is NULL");
  if (out == nullptr) return argument_error("out is NULL");
  return guarded([&] {
    qprob::ScalarField field =
        qprob::evaluate(qprob::parse_observable(expr), domain->domain);
    *out = new qp_field{std::move(field)};
    return QP_OK;
  });
}

void qp_field_destroy(qp_field* field) { delete field; }

int64_t qp_field_cell_count(const qp_field* field) {
  return field == nullptr ? 0 : field->field.domain().cell_count();
}

qp_status qp_field_range(const qp_field* field, double* out_min,
                         double* out_max) {
  if (field == nullptr) return argument_error("field is NULL");
  if (out_min == nullptr || out_max == nullptr) {
    return argument_error("output pointer is NULL");
  }
  *out_min = field->field.min();
  *out_max = field->field.max();
  return QP_OK;
}

qp_status qp_field_copy_values(const qp_field* field, double* buffer,
                               int64_t buffer_len) {
  if (field == nullptr) return argument_error("field is NULL");
  if (buffer == nullptr) return argument_error("buffer is NULL");
  const auto& values = field->field.values();
  if (buffer_len < int64_t(values.size())) {
    return argument_error("buffer too small for the field");
  }
  std::memcpy(buffer, values.data(), values.size() * sizeof(double));
  return QP_OK;
}

qp_status qp_field_to_csv(const qp_field* field, char** out_text) {
  if (field == nullptr) return argument_error("field is NULL");
  if (out_text == nullptr) return argument_error("out_text is NULL");
  return guarded(
      [&] { return emit_string(qprob::field_to_csv(field->field), out_text); });
}

qp_status qp_field_superlevel_rle(const qp_field* field, double threshold,
                                  char** out_text) {
  if (field == nullptr) return argument_error("field is NULL");
  if (out_text == nullptr) return argument_error("out_text is NULL");
  return guarded([&] {
    return emit_string(
        qprob::mask_to_rle(qprob::superlevel(field->field, threshold)),
        out_text);
  });
}

qp_status qp_field_superlevel_pgm(const qp_field* field, double threshold,
                                  uint8_t** out_bytes, int64_t* out_len) {
  if (field == nullptr) return argument_error("field is NULL");
  if (out_bytes == nullptr || out_len == nullptr) {
    return argument_error("output pointer is NULL");
  }
  return guarded([&] {
    const std::string image =
        qprob::mask_to_pgm(qprob::superlevel(field->field, threshold));
    auto* bytes = static_cast<uint8_t*>(std::malloc(image.size()));
    if (bytes == nullptr) {
      g_last_error = "allocation failed";
      return QP_ERROR_INTERNAL;
    }
    std::memcpy(bytes, image.data(), image.size());
    *out_bytes = bytes;
    *out_len = int64_t(image.size());
    return QP_OK;
  });
}

qp_status qp_measure_create(const char* name, const qp_domain* domain,
                            qp_measure** out) {
  if (name == nullptr) return argument_error("name is NULL");
  if (domain == nullptr) return argument_error("domain is NULL");
  if (out == nullptr) return argument_error("out is NULL");
  return guarded([&] {
    *out = new qp_measure{qprob::make_measure(name, domain->domain)};
    return QP_OK;
  });
}

void qp_measure_destroy(qp_measure* measure) { delete measure; }

qp_status qp_measure_of_superlevel(const qp_measure* measure,
                                   const qp_field* field, double threshold,
                                   double* out_value) {
  if (measure == nullptr) return argument_error("measure is NULL");
  if (field == nullptr) return argument_error("field is NULL");
  if (out_value == nullptr) return argument_error("out_value is NULL");
  return guarded([&] {
    *out_value =
        measure->measure->measure_of_superlevel(field->field, threshold);
    return QP_OK;
  });
}

qp_status qp_integrate(const qp_measure* measure, const qp_field* field,
                       double tol, qp_integral_result* out) {
  if (measure == nullptr) return argument_error("measure is NULL");
  if (field == nullptr) return argument_error("field is NULL");
  if (out == nullptr) return argument_error("out is NULL");
  return guarded([&] {
    const qprob::IntegralResult r =
        qprob::integrate(*measure->measure, field->field, tol);
    out->value = r.value;
    out->method = r.method == qprob::IntegrationMethod::Bisection
                      ? QP_METHOD_BISECTION
                      : QP_METHOD_RIEMANN;
    out->evaluations = r.evaluations;
    out->tolerance_achieved = r.tolerance_achieved;
    return QP_OK;
  });
}

qp_status qp_cdf(const qp_measure* measure, const qp_field* field,
                 double** out_pairs, int64_t* out_len) {
  if (measure == nullptr) return argument_error("measure is NULL");
  if (field == nullptr) return argument_error("field is NULL");
  if (out_pairs == nullptr || out_len == nullptr) {
    return argument_error("output pointer is NULL");
  }
  return guarded([&] {
    const qprob::StepCdf f = qprob::cdf(*measure->measure, field->field);
    const auto& samples = f.samples();
    auto* pairs =
        static_cast<double*>(std::malloc(samples.size() * 2 * sizeof(double)));
    if (pairs == nullptr) {
      g_last_error = "allocation failed";
      return QP_ERROR_INTERNAL;
    }
    for (size_t i = 0; i < samples.size(); ++i) {
      pairs[2 * i] = samples[i].first;
      pairs[2 * i + 1] = samples[i].second;
    }
    *out_pairs = pairs;
    *out_len = int64_t(samples.size());
    return QP_OK;
  });
}

qp_status qp_run_integrate(const char* measure, const char* expr, int32_t grid,
                           double tol, char** out_json) {
  if (measure == nullptr || expr == nullptr) {
    return argument_error("measure/expr is NULL");
  }
  if (out_json == nullptr) return argument_error("out_json is NULL");
  return guarded([&] {
    return emit_string(
        qprob::run_integrate(measure, expr, grid, tol).dump(2) + "\n",
        out_json);
  });
}

qp_status qp_run_cdf_csv(const char* measure, const char* expr, int32_t grid,
                         char** out_csv) {
  if (measure == nullptr || expr == nullptr) {
    return argument_error("measure/expr is NULL");
  }
  if (out_csv == nullptr) return argument_error("out_csv is NULL");
  return guarded(
      [&] { return emit_string(qprob::run_cdf_csv(measure, expr, grid), out_csv); });
}

qp_status qp_run_demo_nonlinearity(const char* measure, int32_t grid,
                                   double tol, char** out_json,
                                   int32_t* out_pass) {
  if (measure == nullptr) return argument_error("measure is NULL");
  if (out_json == nullptr) return argument_error("out_json is NULL");
  return guarded([&] {
    return emit_report(qprob::run_demo_nonlinearity(measure, grid, tol),
                       out_json, out_pass);
  });
}

qp_status qp_run_recover(const char* measure, const char* expr,
                         double threshold, int32_t grid, int64_t steps,
                         double tol, char** out_json, int32_t* out_pass) {
  if (measure == nullptr || expr == nullptr) {
    return argument_error("measure/expr is NULL");
  }
  if (out_json == nullptr) return argument_error("out_json is NULL");
  return guarded([&] {
    return emit_report(
        qprob::run_recover(measure, expr, threshold, grid, steps, tol),
        out_json, out_pass);
  });
}

qp_status qp_run_check_axioms(const char* measure, int32_t grid, uint64_t seed,
                              char** out_json, int32_t* out_pass) {
  if (measure == nullptr) return argument_error("measure is NULL");
  if (out_json == nullptr) return argument_error("out_json is NULL");
  return guarded([&] {
    return emit_report(qprob::run_axiom_suite(measure, grid, seed), out_json,
                       out_pass);
  });
}

qp_status qp_run_check_staircase(int32_t grid, uint64_t seed, char** out_json,
                                 int32_t* out_pass) {
  if (out_json == nullptr) return argument_error("out_json is NULL");
  return guarded([&] {
    return emit_report(qprob::run_staircase_suite(grid, seed), out_json,
                       out_pass);
  });
}

qp_status qp_run_check_urysohn(int32_t grid, uint64_t seed, char** out_json,
                               int32_t* out_pass) {
  if (out_json == nullptr) return argument_error("out_json is NULL");
  return guarded([&] {
    return emit_report(qprob::run_urysohn_suite(grid, seed), out_json,
                       out_pass);
  });
}

qp_status qp_run_check_qspace(const char* space_json, char** out_json,
                              int32_t* out_pass) {
  if (space_json == nullptr) return argument_error("space_json is NULL");
  if (out_json == nullptr) return argument_error("out_json is NULL");
  return guarded([&] {
    return emit_report(qprob::run_qspace_check(space_json), out_json,
                       out_pass);
  });
}

}  // extern "C"
