#include "enplab/runner.hpp"

#include "enplab/csv.hpp"
#include "enplab/elastic.hpp"
#include "enplab/spectra.hpp"
#include "enplab/surface.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace enplab::runner {
namespace {

constexpr double kTailQ = 0.1;           // headline tail quantile
constexpr double kNoncompactFloor = 0.2; // non-compact control must keep this much of its tail
constexpr double kMaxImag = 1e-3;        // cluster health at the finest level
constexpr double kMinAssigned = 0.9;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Report names become CSV column names: signs are spelled out so that the
// primary and literal variants of a case stay distinguishable.
std::string sanitize(std::string_view s) {
  std::string out;
  bool gap = false;
  auto put = [&](std::string_view word) {
    if (!out.empty()) out += '_';
    out += word;
    gap = false;
  };
  for (char ch : s) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      if (gap && !out.empty()) out += '_';
      gap = false;
      out += ch;
    } else if (ch == '+') {
      put("plus");
    } else if (ch == '-') {
      put("minus");
    } else {
      gap = true;
    }
  }
  return out.empty() ? std::string("report") : out;
}

struct CaseBlock {
  spectra::SuiteCase c;
  std::vector<std::vector<const spectra::DecayReport*>> levels;  // [level][report]
  std::vector<std::string> names;                                // sanitized column names
};

std::vector<CaseBlock> partition(const std::vector<spectra::SuiteCase>& cases,
                                 const std::vector<spectra::DecayReport>& reps,
                                 std::size_t nlevels) {
  std::vector<spectra::SuiteCase> uniq;
  for (auto c : cases)
    if (std::find(uniq.begin(), uniq.end(), c) == uniq.end()) uniq.push_back(c);
  std::vector<CaseBlock> out;
  std::size_t pos = 0;
  for (auto c : uniq) {
    CaseBlock b;
    b.c = c;
    const int m = spectra::report_count(c);
    for (std::size_t l = 0; l < nlevels; ++l) {
      std::vector<const spectra::DecayReport*> row;
      for (int r = 0; r < m; ++r) row.push_back(&reps.at(pos++));
      b.levels.push_back(std::move(row));
    }
    for (const auto* rp : b.levels.front()) {
      std::string n = sanitize(rp->name);
      while (std::find(b.names.begin(), b.names.end(), n) != b.names.end()) n += "_b";
      b.names.push_back(std::move(n));
    }
    out.push_back(std::move(b));
  }
  if (pos != reps.size())
    throw std::logic_error("runner: report partition does not cover the suite output");
  return out;
}

struct Verdict {
  std::string name;
  bool pass = true;
  std::string detail;
};

Verdict grade(const CaseBlock& b) {
  Verdict v{std::string(spectra::case_name(b.c)), true, {}};
  std::ostringstream d;
  if (b.c == spectra::SuiteCase::kNoncompactFactors) {
    for (std::size_t r = 0; r < b.names.size(); ++r) {
      const double first = b.levels.front()[r]->tail_index(kTailQ);
      const double last = b.levels.back()[r]->tail_index(kTailQ);
      const bool ok = last >= kNoncompactFloor * first;
      if (!ok) v.pass = false;
      if (r) d << "; ";
      d << b.names[r] << " t10 " << fmt(first) << " -> " << fmt(last)
        << (ok ? " (stays up)" : " (collapsed)");
    }
  } else {
    std::vector<double> t;
    for (const auto& lv : b.levels) t.push_back(lv.front()->tail_index(kTailQ));
    bool mono = true;
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!(t[i] < t[i - 1])) mono = false;
    const double ref = b.levels.back().front()->ref_tail_index(kTailQ);
    const bool below = t.back() < ref;
    v.pass = mono && below;
    d << "t10";
    for (double x : t) d << ' ' << fmt(x);
    d << ", ref " << fmt(ref) << ": " << (mono ? "decreasing" : "NOT decreasing") << ", "
      << (below ? "below ref" : "NOT below ref");
  }
  v.detail = d.str();
  return v;
}

void write_verified(const std::filesystem::path& path, const csv::Table& t) {
  csv::write(path, t);
  const csv::Table back = csv::read(path);
  bool ok = back.header == t.header && back.rows.size() == t.rows.size();
  for (std::size_t i = 0; ok && i < t.rows.size(); ++i) {
    ok = back.rows[i].size() == t.rows[i].size();
    for (std::size_t j = 0; ok && j < t.rows[i].size(); ++j)
      ok = std::memcmp(&back.rows[i][j], &t.rows[i][j], sizeof(double)) == 0;
  }
  if (!ok) throw std::runtime_error("csv round-trip verification failed: " + path.string());
}

void write_case_csv(const std::filesystem::path& dir, const CaseBlock& b, int level,
                    const std::vector<const spectra::DecayReport*>& reps) {
  csv::Table t;
  t.header.push_back("index");
  for (const auto& n : b.names) t.header.push_back(n);
  t.header.push_back("ref");
  const std::size_t rows = static_cast<std::size_t>(reps.front()->sv.size());
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> row;
    row.push_back(static_cast<double>(i));
    for (const auto* rp : reps)
      row.push_back(i < static_cast<std::size_t>(rp->sv.size()) ? rp->sv[i] : 0.0);
    row.push_back(i < static_cast<std::size_t>(reps.front()->ref_sv.size())
                      ? reps.front()->ref_sv[i]
                      : 0.0);
    t.rows.push_back(std::move(row));
  }
  const std::string fname =
      std::string(spectra::case_name(b.c)) + "_sv_level" + std::to_string(level) + ".csv";
  write_verified(dir / fname, t);
}

struct ClusterLevel {
  int level;
  spectra::SpectrumReport rep;
};

std::vector<ClusterLevel> cluster_study(const config::ExperimentConfig& cfg,
                                        const std::filesystem::path& dir) {
  std::vector<ClusterLevel> out;
  const elastic::LameParams p(cfg.lambda, cfg.mu);
  const double k0 = elastic::constants(p).k0;
  for (int N : cfg.ladder) {
    try {
      const auto quad = surf::sphere_quadrature(cfg.sphere_radius, N);
      const Eigen::MatrixXd K = surf::assemble_K(p, quad);
      Eigen::VectorXd w3(3 * quad.size());
      w3 << quad.w0, quad.w0, quad.w0;
      const auto eigs = spectra::eigenvalues(K, w3);
      if (cfg.emit_eigs) {
        csv::Table t;
        t.header = {"re", "im"};
        for (const auto& z : eigs) t.rows.push_back({z.real(), z.imag()});
        write_verified(dir / ("K_eigs_level" + std::to_string(N) + ".csv"), t);
      }
      out.push_back({N, spectra::cluster_report(eigs, k0, cfg.cluster_radius)});
    } catch (const std::exception& e) {
      throw std::runtime_error("cluster study, level " + std::to_string(N) + ": " + e.what());
    }
  }
  return out;
}

std::string join_cases(const std::vector<spectra::SuiteCase>& cases) {
  std::string s;
  for (auto c : cases) {
    if (!s.empty()) s += ',';
    s += std::string(spectra::case_name(c));
  }
  return s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) {
    if (!s.empty()) s += ',';
    s += std::to_string(x);
  }
  return s;
}

}  // namespace

RunResult run(const config::ExperimentConfig& cfg) {
  std::filesystem::path dir = cfg.output_dir;
  if (const char* root = std::getenv("ENPLAB_OUTPUT_ROOT"); root && *root && dir.is_relative())
    dir = std::filesystem::path(root) / dir;
  std::filesystem::create_directories(dir);

  std::vector<spectra::DecayReport> reports;
  try {
    reports = spectra::run_cases(cfg.cases, cfg.suite());
  } catch (const std::exception& e) {
    throw std::runtime_error("suite cases [" + join_cases(cfg.cases) + "]: " + e.what());
  }
  const auto blocks = partition(cfg.cases, reports, cfg.ladder.size());

  std::vector<ClusterLevel> clusters;
  if (cfg.has_sphere_case()) clusters = cluster_study(cfg, dir);

  std::ostringstream hum, mach;
  hum << "experiment: " << cfg.experiment << "\n";
  hum << "  metric=" << cfg.metric << " alpha=" << fmt(cfg.alpha)
      << " grid_half_width=" << fmt(cfg.grid_half_width)
      << " sphere_radius=" << fmt(cfg.sphere_radius) << "\n";
  hum << "  lame=(" << fmt(cfg.lambda) << ", " << fmt(cfg.mu) << ")"
      << " cluster_radius=" << fmt(cfg.cluster_radius) << " seed=" << cfg.seed << "\n";
  hum << "  ladder=" << join_ints(cfg.ladder) << "\n";
  if (!cfg.notes.empty()) hum << "  notes: " << cfg.notes << "\n";
  hum << "\n";

  mach << "== machine ==\n";
  mach << "CONFIG experiment=" << cfg.experiment << " metric=" << cfg.metric
       << " alpha=" << fmt(cfg.alpha) << " S=" << fmt(cfg.grid_half_width)
       << " sphere_radius=" << fmt(cfg.sphere_radius) << " lambda=" << fmt(cfg.lambda)
       << " mu=" << fmt(cfg.mu) << " cluster_radius=" << fmt(cfg.cluster_radius)
       << " seed=" << cfg.seed << " ladder=" << join_ints(cfg.ladder)
       << " cases=" << join_cases(cfg.cases) << "\n";

  bool all_pass = true;
  for (const auto& b : blocks) {
    hum << "case " << spectra::case_name(b.c) << ": " << spectra::case_summary(b.c) << "\n";
    for (std::size_t l = 0; l < b.levels.size(); ++l) {
      const int level = b.levels[l].front()->level;
      write_case_csv(dir, b, level, b.levels[l]);
      for (std::size_t r = 0; r < b.levels[l].size(); ++r) {
        const auto* rp = b.levels[l][r];
        hum << "  level " << level << "  " << rp->name << ": t05=" << fmt(rp->tail_index(0.05))
            << " t10=" << fmt(rp->tail_index(0.10)) << " t25=" << fmt(rp->tail_index(0.25))
            << "  ref_t10=" << fmt(rp->ref_tail_index(0.10)) << "\n";
        mach << "RESULT case=" << spectra::case_name(b.c) << " report=" << b.names[r]
             << " level=" << level << " t05=" << fmt(rp->tail_index(0.05))
             << " t10=" << fmt(rp->tail_index(0.10)) << " t25=" << fmt(rp->tail_index(0.25))
             << " ref_t10=" << fmt(rp->ref_tail_index(0.10)) << "\n";
      }
    }
    const Verdict v = grade(b);
    if (!v.pass) all_pass = false;
    hum << "  verdict: " << (v.pass ? "PASS" : "FAIL") << " (" << v.detail << ")\n\n";
    mach << "VERDICT case=" << v.name << " status=" << (v.pass ? "PASS" : "FAIL") << "\n";
  }

  if (!clusters.empty()) {
    hum << "boundary-operator spectrum clusters (targets 0, +k0, -k0):\n";
    for (const auto& cl : clusters) {
      hum << "  level " << cl.level << ": counts " << cl.rep.counts[0] << "/" << cl.rep.counts[1]
          << "/" << cl.rep.counts[2] << ", unassigned " << cl.rep.unassigned << " ("
          << fmt(cl.rep.unassigned_fraction()) << "), max|Im| " << fmt(cl.rep.max_imag) << "\n";
      mach << "CLUSTER level=" << cl.level << " max_imag=" << fmt(cl.rep.max_imag)
           << " count0=" << cl.rep.counts[0] << " countpos=" << cl.rep.counts[1]
           << " countneg=" << cl.rep.counts[2]
           << " unassigned_fraction=" << fmt(cl.rep.unassigned_fraction()) << "\n";
    }
    const auto& fin = clusters.back().rep;
    const bool ok = fin.max_imag <= kMaxImag &&
                    1.0 - fin.unassigned_fraction() >= kMinAssigned &&
                    fin.all_clusters_nonempty();
    if (!ok) all_pass = false;
    hum << "  verdict: " << (ok ? "PASS" : "FAIL") << " (finest level: max|Im| "
        << fmt(fin.max_imag) << " vs " << fmt(kMaxImag) << ", assigned "
        << fmt(1.0 - fin.unassigned_fraction()) << " vs " << fmt(kMinAssigned) << ", clusters "
        << (fin.all_clusters_nonempty() ? "all non-empty" : "some empty") << ")\n\n";
    mach << "VERDICT case=CLUSTERS status=" << (ok ? "PASS" : "FAIL") << "\n";
  }

  const int exit_code = all_pass ? 0 : 3;
  mach << "STATUS exit=" << exit_code << "\n";

  RunResult res;
  res.exit_code = exit_code;
  res.output_dir = dir;
  res.summary = hum.str() + mach.str();
  std::ofstream out(dir / "summary.txt");
  out << res.summary;
  if (!out.flush()) throw std::runtime_error("cannot write " + (dir / "summary.txt").string());
  return res;
}

}  // namespace enplab::runner
