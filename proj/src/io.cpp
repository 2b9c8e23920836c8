#include "grn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "grn/errors.hpp"

namespace grn {

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  return f;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto f = open_out(path);
  f << "t,M,P\n";
  for (size_t i = 0; i < traj.t.size(); ++i)
    f << fmt17(traj.t[i]) << ',' << fmt17(traj.M[i]) << ',' << fmt17(traj.P[i])
      << '\n';
}

void write_snapshot_csv(const std::string& path, const std::vector<double>& x,
                        const ConcentrationState& s) {
  if (x.size() != s.m.size())
    throw ConfigError("snapshot: grid and fields disagree");
  auto f = open_out(path);
  f << "x,m,p\n";
  for (size_t i = 0; i < x.size(); ++i)
    f << fmt17(x[i]) << ',' << fmt17(s.m[i]) << ',' << fmt17(s.p[i]) << '\n';
}

void write_profile_csv(const std::string& path, const SteadyStateSolution& sol) {
  auto f = open_out(path);
  f << "x,m_star,p_star\n";
  for (size_t i = 0; i < sol.x.size(); ++i)
    f << fmt17(sol.x[i]) << ',' << fmt17(sol.m_profile[i]) << ','
      << fmt17(sol.p_profile[i]) << '\n';
}

void write_steady_summary_csv(const std::string& path,
                              const SteadyStateSolution& sol) {
  auto f = open_out(path);
  f << "D,p_at_gene,residual\n";
  f << fmt17(sol.D) << ',' << fmt17(sol.p_at_gene) << ','
    << fmt17(sol.residual) << '\n';
}

void write_roots_csv(const std::string& path, double D, const RootSet& rs) {
  auto f = open_out(path);
  f << "D,re_lambda,im_lambda,residual,re_Rprime,im_Rprime\n";
  for (const Root& r : rs.roots)
    f << fmt17(D) << ',' << fmt17(r.lam.real()) << ',' << fmt17(r.lam.imag())
      << ',' << fmt17(r.residual) << ',' << fmt17(r.Rprime.real()) << ','
      << fmt17(r.Rprime.imag()) << '\n';
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  auto f = open_out(path);
  f << "D,max_re_lambda,unstable_count\n";
  for (const SweepRow& r : rows)
    f << fmt17(r.D) << ',' << fmt17(r.max_re) << ',' << r.unstable_count
      << '\n';
}

void write_amplitude_csv(const std::string& path, const AmplitudeParams& ap) {
  auto f = open_out(path);
  f << "T,re_A,im_A,abs_A\n";
  for (size_t i = 0; i < ap.T.size(); ++i)
    f << fmt17(ap.T[i]) << ',' << fmt17(ap.A[i].real()) << ','
      << fmt17(ap.A[i].imag()) << ',' << fmt17(std::abs(ap.A[i])) << '\n';
}

std::string hopf_point_json(const HopfPoint& hp) {
  std::string s = "{";
  s += "\"j\": " + std::to_string(hp.j);
  s += ", \"D_c\": " + fmt17(hp.D_c);
  s += ", \"omega_c\": " + fmt17(hp.omega_c);
  s += ", \"period\": " + fmt17(hp.period());
  s += ", \"dlambda_dD_re\": " + fmt17(hp.dlambda_dD.real());
  s += ", \"dlambda_dD_im\": " + fmt17(hp.dlambda_dD.imag());
  s += ", \"b_re\": " + fmt17(hp.b.real());
  s += ", \"b_im\": " + fmt17(hp.b.imag());
  s += ", \"classification\": \"" + to_string(hp.classification) + "\"";
  s += "}";
  return s;
}

std::string hopf_report_json(const std::vector<HopfPoint>& points) {
  std::string s = "{\"critical_points\": [";
  for (size_t i = 0; i < points.size(); ++i) {
    if (i) s += ", ";
    s += hopf_point_json(points[i]);
  }
  s += "]}";
  return s;
}

std::string amplitude_report_json(const AmplitudeScalingReport& rep) {
  auto arr = [](const std::vector<double>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += fmt17(v[i]);
    }
    return s + "]";
  };
  std::string s = "{";
  s += "\"delta\": " + arr(rep.delta);
  s += ", \"amplitude\": " + arr(rep.amplitude);
  s += ", \"period\": " + arr(rep.period);
  s += ", \"decay_steady\": [";
  for (size_t i = 0; i < rep.decay_steady.size(); ++i) {
    if (i) s += ", ";
    s += rep.decay_steady[i] ? "true" : "false";
  }
  s += "]";
  s += ", \"exponent\": " + fmt17(rep.exponent);
  s += ", \"period_ref\": " + fmt17(rep.period_ref);
  s += "}";
  return s;
}

std::string classification_json(const AttractorClass& ac) {
  std::string s = "{";
  s += "\"kind\": \"" + to_string(ac.kind) + "\"";
  s += ", \"amplitude_metric\": " + fmt17(ac.amplitude_metric);
  s += ", \"period\": " + fmt17(ac.period);
  s += "}";
  return s;
}

}  // namespace grn
