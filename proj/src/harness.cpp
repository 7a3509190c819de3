#include "gte/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "gte/error.hpp"

namespace gte {

void RoundtripConfig::validate() const {
  encode.validate();
  decode.validate();
  noise.validate();
  topo.validate();
  apls.validate();
  if (simplify_tol_deg < 0.0 || simplify_tol_deg >= 90.0) {
    throw ConfigError("simplify_tol_deg must be in [0, 90)");
  }
  if (crossing_match_dist <= 0.0) {
    throw ConfigError("crossing_match_dist must be positive");
  }
}

namespace {

void fnv_feed(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
}

}  // namespace

std::uint64_t config_hash(const RoundtripConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << cfg.encode.lambda << '|' << cfg.encode.d_max << '|' << cfg.encode.d
     << '|' << cfg.encode.min_sep << '|' << cfg.decode.p_thr << '|'
     << cfg.decode.edge_thr << '|' << cfg.decode.w << '|'
     << cfg.decode.max_connect_dist << '|' << cfg.decode.candidate_radius
     << '|' << cfg.decode.nms_window << '|' << cfg.noise.sigma_p << '|'
     << cfg.noise.sigma_vec << '|' << cfg.noise.blur_radius << '|'
     << cfg.noise.drop_rate << '|' << cfg.topo.subgraph_radius << '|'
     << cfg.topo.seed_spacing << '|' << cfg.topo.marker_spacing << '|'
     << cfg.topo.match_dist << '|' << cfg.topo.seed_match_dist << '|'
     << cfg.apls.snap_dist << '|' << cfg.apls.control_spacing << '|'
     << cfg.apls.max_pairs << '|' << cfg.simplify_tol_deg << '|'
     << cfg.crossing_match_dist;
  std::uint64_t h = 14695981039346656037ULL;
  fnv_feed(h, os.str());
  return h;
}

RoundtripRow roundtrip(const SpatialGraph& truth, const RoundtripConfig& cfg) {
  cfg.validate();
  RoundtripRow row;
  row.cfg_hash = config_hash(cfg);
  row.seed = cfg.noise.seed;
  auto t0 = std::chrono::steady_clock::now();
  try {
    SpatialGraph dense = interpolate(truth, cfg.encode.d);
    ConflictResolution resolved = resolve_conflicts(dense, cfg.encode.min_sep);
    row.conflict_report = resolved.report;

    FixReport fixes;
    GteTensor tensor = encode(resolved.graph, cfg.encode, &fixes);
    if (fixes.total_edges > 0) {
      row.undirected_fix_ratio =
          static_cast<double>(fixes.undirected_fixed) / fixes.total_edges;
      row.interpolation_fix_ratio =
          static_cast<double>(fixes.interpolation_fixed) / fixes.total_edges;
    }

    GteTensor noisy = perturb(tensor, cfg.noise);
    DecodeResult decoded = decode(noisy, cfg.decode);
    row.decode_report = decoded.report;

    SpatialGraph truth_s = simplify(truth, cfg.simplify_tol_deg);
    SpatialGraph prop_s = simplify(decoded.graph, cfg.simplify_tol_deg);

    TopoResult t = topo(truth_s, prop_s, cfg.topo);
    row.topo_precision = t.precision;
    row.topo_recall = t.recall;
    row.topo_f1 = t.f1;
    row.apls = apls(truth_s, prop_s, cfg.apls).score;
    CrossingMatch cm = crossing_match(truth_s, prop_s, cfg.crossing_match_dist);
    row.crossing_precision = cm.precision;
    row.crossing_recall = cm.recall;
  } catch (const Error& e) {
    row.error = e.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return row;
}

std::string report_header() {
  return "config_hash,seed,axis,axis_value,topo_precision,topo_recall,topo_f1,"
         "apls,crossing_precision,crossing_recall,undirected_fix_ratio,"
         "interpolation_fix_ratio,slot_total,slot_connected,slot_unmatched,"
         "slot_degenerate,vertices,edges,conflict_iterations,"
         "remaining_conflicts,wall_ms,error";
}

std::string to_csv(const RoundtripRow& row) {
  std::ostringstream os;
  os.precision(10);
  os << row.cfg_hash << ',' << row.seed << ',' << row.axis << ','
     << row.axis_value << ',' << row.topo_precision << ',' << row.topo_recall
     << ',' << row.topo_f1 << ',' << row.apls << ','
     << row.crossing_precision << ',' << row.crossing_recall << ','
     << row.undirected_fix_ratio << ',' << row.interpolation_fix_ratio << ','
     << row.decode_report.slot_total << ',' << row.decode_report.slot_connected
     << ',' << row.decode_report.slot_unmatched << ','
     << row.decode_report.slot_degenerate << ',' << row.decode_report.vertices
     << ',' << row.decode_report.edges << ','
     << row.conflict_report.iterations << ','
     << row.conflict_report.remaining_conflicts << ',' << row.wall_ms << ',';
  std::string err = row.error;
  for (char& c : err) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  os << err;
  return os.str();
}

namespace {

void apply_axis(RoundtripConfig& cfg, const std::string& axis, double value) {
  if (axis == "p_thr") {
    cfg.decode.p_thr = value;
  } else if (axis == "edge_thr") {
    cfg.decode.edge_thr = value;
  } else if (axis == "w") {
    cfg.decode.w = value;
  } else if (axis == "sigma_p") {
    cfg.noise.sigma_p = value;
  } else if (axis == "sigma_vec") {
    cfg.noise.sigma_vec = value;
  } else if (axis == "d_max") {
    double r = std::round(value);
    if (r != value) throw ConfigError("d_max sweep values must be integers");
    cfg.encode.d_max = static_cast<int>(r);
  } else if (axis == "d") {
    cfg.encode.d = value;
  } else {
    throw ConfigError("unknown sweep axis: " + axis);
  }
}

}  // namespace

std::vector<RoundtripRow> sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep needs at least one value");
  if (spec.replicates < 1) throw ConfigError("replicates must be at least 1");
  spec.corpus.validate();
  {
    // Reject a bad axis name before any generation work.
    RoundtripConfig probe = spec.base;
    apply_axis(probe, spec.axis, spec.values.front());
  }

  auto run_one = [&spec](double value, int replicate) {
    RoundtripConfig cfg = spec.base;
    apply_axis(cfg, spec.axis, value);
    SynthSpec corpus = spec.corpus;
    corpus.seed = spec.corpus.seed + static_cast<std::uint64_t>(replicate);
    cfg.noise.seed = corpus.seed;
    RoundtripRow row;
    try {
      SpatialGraph truth = generate(corpus);
      row = roundtrip(truth, cfg);
    } catch (const Error& e) {
      row.cfg_hash = config_hash(cfg);
      row.seed = corpus.seed;
      row.error = e.what();
    }
    row.axis = spec.axis;
    row.axis_value = value;
    return row;
  };

  // Jobs are independent; run them on a bounded pool and store results by
  // job index so the report order is deterministic.
  std::vector<std::pair<double, int>> jobs;
  jobs.reserve(spec.values.size() * spec.replicates);
  for (double value : spec.values) {
    for (int i = 0; i < spec.replicates; ++i) jobs.emplace_back(value, i);
  }
  std::vector<RoundtripRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      rows[j] = run_one(jobs[j].first, jobs[j].second);
    }
  };
  unsigned n = std::min<std::size_t>(
      jobs.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace gte
