#include "ggsp/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ggsp/errors.hpp"

namespace ggsp::io {

using nlohmann::json;

namespace {

double read_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  return v.get<double>();
}

template <Scalar T>
T read_entry(const json& v, const std::string& where) {
  if constexpr (is_complex<T>::value) {
    if (!v.is_array() || v.size() != 2) throw InputError(where + ": complex entries must be [re, im] pairs");
    return {read_number(v[0], where), read_number(v[1], where)};
  } else {
    return read_number(v, where);
  }
}

template <Scalar T>
FrameSeq<T> read_vectors(const json& doc, std::size_t dim) {
  const json& vs = doc.at("vectors");
  if (!vs.is_array() || vs.empty()) throw InputError("\"vectors\" must be a nonempty array");
  std::vector<Vector<T>> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const json& row = vs[i];
    const std::string where = "vector " + std::to_string(i + 1);
    if (!row.is_array()) throw InputError(where + ": expected an array of coordinates");
    if (row.size() != dim) {
      throw DimensionError(where + " has " + std::to_string(row.size()) + " coordinates, expected " +
                           std::to_string(dim));
    }
    Vector<T> v;
    for (const json& x : row) v.push_back(read_entry<T>(x, where));
    out.push_back(std::move(v));
  }
  return FrameSeq<T>(dim, std::move(out));
}

template <Scalar T>
json entry_to_json(const T& x) {
  if constexpr (is_complex<T>::value) {
    return json::array({x.real(), x.imag()});
  } else {
    return x;
  }
}

template <Scalar T>
void write_coords(std::ostream& out, const Vector<T>& v) {
  for (const T& x : v) {
    if constexpr (is_complex<T>::value) {
      out << ',' << format_double(x.real()) << ',' << format_double(x.imag());
    } else {
      out << ',' << format_double(x);
    }
  }
}

template <Scalar T>
void write_coord_header(std::ostream& out, std::size_t dim) {
  for (std::size_t j = 1; j <= dim; ++j) {
    if constexpr (is_complex<T>::value) {
      out << ",coord_" << j << "_re,coord_" << j << "_im";
    } else {
      out << ",coord_" << j;
    }
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

AnyFrame parse_frame(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed frame JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("frame JSON must be an object");
  for (const char* key : {"dim", "field", "vectors"}) {
    if (!doc.contains(key)) throw InputError(std::string("frame JSON is missing \"") + key + "\"");
  }
  const json& dim = doc["dim"];
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw InputError("\"dim\" must be a positive integer");
  }
  const auto d = static_cast<std::size_t>(dim.get<long long>());
  const json& field = doc["field"];
  if (field == "real") return read_vectors<double>(doc, d);
  if (field == "complex") return read_vectors<cplx>(doc, d);
  throw InputError("\"field\" must be \"real\" or \"complex\"");
}

AnyFrame load_frame(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_frame(buf.str());
}

template <Scalar T>
json vectors_to_json(const std::vector<Vector<T>>& vectors) {
  json arr = json::array();
  for (const Vector<T>& v : vectors) {
    json row = json::array();
    for (const T& x : v) row.push_back(entry_to_json(x));
    arr.push_back(std::move(row));
  }
  return arr;
}

template <Scalar T>
json frame_to_json(const FrameSeq<T>& frame) {
  json doc;
  doc["dim"] = frame.dim();
  doc["field"] = std::string(field_name(frame.field()));
  doc["vectors"] = vectors_to_json(frame.vectors());
  return doc;
}

json limit_report_to_json(const LimitReport& r) {
  return json{{"empirically_converged", r.converged},
              {"iterations_run", r.iterations_run},
              {"zero_indices", r.zero_indices},
              {"surviving_indices", r.surviving_indices},
              {"predicted_zero_indices", r.predicted_zero_indices},
              {"onb_residual", r.onb_residual},
              {"prediction_match", r.prediction_match},
              {"delta_zero", r.delta_zero},
              {"delta_onb", r.delta_onb}};
}

json recurrence_report_to_json(const RecurrenceReport& r) {
  return json{{"norm_recurrence", r.norm_recurrence},
              {"cauchy_schwarz", r.cauchy_schwarz},
              {"accumulated_lower", r.accumulated_lower},
              {"upper_bound", r.upper_bound},
              {"epsilon_lower", r.epsilon_lower},
              {"closed_form", r.closed_form},
              {"pairs_checked", r.pairs_checked},
              {"iterations_checked", r.iterations_checked},
              {"passed", r.passed()}};
}

template <Scalar T>
json trace_to_json(const IterationTrace<T>& trace, const IterateOptions& options) {
  const FrameSeq<T>& g0 = trace.initial();
  json doc;
  doc["metadata"] = {{"dim", g0.dim()},
                     {"field", std::string(field_name(g0.field()))},
                     {"count", g0.size()},
                     {"iterations_run", trace.iterations_run},
                     {"stationary", trace.stationary},
                     {"max_iter", options.max_iter},
                     {"eps_delta", options.eps_delta},
                     {"snapshot_stride", options.snapshot_stride},
                     {"dep_tol", options.dep_tol},
                     {"dependent_indices", trace.dependent_indices},
                     {"input_zeros", trace.input_zeros}};
  doc["deltas"] = trace.deltas;
  doc["norms"] = trace.norms;
  json snaps = json::array();
  for (const Snapshot<T>& s : trace.frames) {
    snaps.push_back({{"iteration", s.iteration}, {"vectors", vectors_to_json(s.frame.vectors())}});
  }
  doc["snapshots"] = std::move(snaps);
  return doc;
}

template <Scalar T>
void write_trace_csv(std::ostream& out, const IterationTrace<T>& trace) {
  const std::size_t dim = trace.initial().dim();
  out << "iteration,vector_index,norm";
  write_coord_header<T>(out, dim);
  out << '\n';
  std::size_t next_snap = 0;
  for (std::size_t m = 0; m < trace.norms.size(); ++m) {
    const Snapshot<T>* snap = nullptr;
    if (next_snap < trace.frames.size() && trace.frames[next_snap].iteration == m) {
      snap = &trace.frames[next_snap++];
    }
    for (std::size_t i = 0; i < trace.norms[m].size(); ++i) {
      out << m << ',' << (i + 1) << ',' << format_double(trace.norms[m][i]);
      if (snap != nullptr) {
        write_coords(out, snap->frame[i]);
      } else {
        const std::size_t blanks = dim * (is_complex<T>::value ? 2 : 1);
        for (std::size_t j = 0; j < blanks; ++j) out << ',';
      }
      out << '\n';
    }
  }
}

template <Scalar T>
void write_frame_csv(std::ostream& out, const FrameSeq<T>& frame) {
  out << "vector_index,norm";
  write_coord_header<T>(out, frame.dim());
  out << '\n';
  for (std::size_t i = 0; i < frame.size(); ++i) {
    out << (i + 1) << ',' << format_double(norm(frame[i]));
    write_coords(out, frame[i]);
    out << '\n';
  }
}

#define GGSP_INSTANTIATE(T)                                                               \
  template json frame_to_json<T>(const FrameSeq<T>&);                                     \
  template json vectors_to_json<T>(const std::vector<Vector<T>>&);                        \
  template json trace_to_json<T>(const IterationTrace<T>&, const IterateOptions&);        \
  template void write_trace_csv<T>(std::ostream&, const IterationTrace<T>&);              \
  template void write_frame_csv<T>(std::ostream&, const FrameSeq<T>&);

GGSP_INSTANTIATE(double)
GGSP_INSTANTIATE(cplx)

#undef GGSP_INSTANTIATE

}  // namespace ggsp::io
