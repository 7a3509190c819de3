#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gte/decoder.hpp"
#include "gte/encoder.hpp"
#include "gte/error.hpp"
#include "gte/harness.hpp"
#include "gte/loss.hpp"
#include "gte/metrics.hpp"
#include "gte/noise.hpp"
#include "gte/spatial_graph.hpp"
#include "gte/synth.hpp"
#include "gte/tensor.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gte::IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw gte::IoError("write failed: " + path);
}

gte::SynthSpec add_synth_options(CLI::App* cmd, std::string& kind_name) {
  gte::SynthSpec spec;
  cmd->add_option("--kind", kind_name, "grid, radial, organic or stacked")
      ->required();
  cmd->add_option("--extent", spec.extent, "tile side in meters");
  cmd->add_option("--spacing", spec.spacing, "road spacing in meters");
  cmd->add_option("--curviness", spec.curviness, "jitter scale, 0..1");
  cmd->add_option("--overpasses", spec.overpasses, "highways (stacked kind)");
  cmd->add_option("--seed", spec.seed, "random seed");
  return spec;
}

void add_decode_options(CLI::App* cmd, gte::DecodeConfig& cfg) {
  cmd->add_option("--pthr", cfg.p_thr, "vertexness threshold");
  cmd->add_option("--ethr", cfg.edge_thr, "edgeness threshold");
  cmd->add_option("--w", cfg.w, "cosine penalty weight");
  cmd->add_option("--maxdist", cfg.max_connect_dist, "connection cap (m)");
  cmd->add_option("--radius", cfg.candidate_radius, "candidate radius (m)");
}

void add_noise_options(CLI::App* cmd, gte::NoiseConfig& cfg) {
  cmd->add_option("--sigma-p", cfg.sigma_p, "probability channel noise std");
  cmd->add_option("--sigma-vec", cfg.sigma_vec, "vector channel noise std (m)");
  cmd->add_option("--blur", cfg.blur_radius, "box blur radius (cells)");
  cmd->add_option("--drop", cfg.drop_rate, "vertex drop fraction");
  cmd->add_option("--seed", cfg.seed, "random seed");
}

void add_metric_options(CLI::App* cmd, gte::TopoConfig& topo,
                        gte::AplsConfig& apls) {
  cmd->add_option("--topo-radius", topo.subgraph_radius, "subgraph radius (m)");
  cmd->add_option("--topo-seed-spacing", topo.seed_spacing, "seed spacing (m)");
  cmd->add_option("--topo-marker-spacing", topo.marker_spacing,
                  "marker spacing (m)");
  cmd->add_option("--topo-match-dist", topo.match_dist,
                  "marker match distance (m)");
  cmd->add_option("--apls-snap-dist", apls.snap_dist, "snap distance (m)");
  cmd->add_option("--apls-control-spacing", apls.control_spacing,
                  "control point spacing (m)");
  cmd->add_option("--apls-max-pairs", apls.max_pairs,
                  "sampled pairs per direction");
}

int run(int argc, char** argv) {
  CLI::App app{"Graph-tensor encoding toolkit for spatial road graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "formats: GRAPH1 GTE1");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic graph");
  std::string synth_kind;
  gte::SynthSpec synth_spec = add_synth_options(synth_cmd, synth_kind);
  std::string synth_out;
  synth_cmd->add_option("-o,--output", synth_out, "graph file")->required();

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "graph to tensor");
  std::string encode_in, encode_out;
  gte::EncodeConfig encode_cfg;
  encode_cmd->add_option("-i,--input", encode_in, "graph file")->required();
  encode_cmd->add_option("-o,--output", encode_out, "tensor file")->required();
  encode_cmd->add_option("--lambda", encode_cfg.lambda, "meters per cell");
  encode_cmd->add_option("--dmax", encode_cfg.d_max, "sectors per cell");
  encode_cmd->add_option("--d", encode_cfg.d, "interpolation spacing (m)");
  encode_cmd->add_option("--min-sep", encode_cfg.min_sep,
                         "conflict separation (m)");

  // decode
  auto* decode_cmd = app.add_subcommand("decode", "tensor to graph");
  std::string decode_in, decode_out, decode_report;
  gte::DecodeConfig decode_cfg;
  decode_cmd->add_option("-i,--input", decode_in, "tensor file")->required();
  decode_cmd->add_option("-o,--output", decode_out, "graph file")->required();
  add_decode_options(decode_cmd, decode_cfg);
  decode_cmd->add_option("--report", decode_report, "decode report CSV file");

  // perturb
  auto* perturb_cmd = app.add_subcommand("perturb", "add noise to a tensor");
  std::string perturb_in, perturb_out;
  gte::NoiseConfig noise_cfg;
  perturb_cmd->add_option("-i,--input", perturb_in, "tensor file")->required();
  perturb_cmd->add_option("-o,--output", perturb_out, "tensor file")
      ->required();
  add_noise_options(perturb_cmd, noise_cfg);

  // loss
  auto* loss_cmd = app.add_subcommand("loss", "masked loss between tensors");
  std::string loss_pred, loss_truth;
  loss_cmd->add_option("--pred", loss_pred, "predicted tensor")->required();
  loss_cmd->add_option("--truth", loss_truth, "ground-truth tensor")
      ->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "score a proposal graph");
  std::string eval_truth, eval_prop, eval_topo_csv, eval_apls_csv;
  gte::TopoConfig topo_cfg;
  gte::AplsConfig apls_cfg;
  eval_cmd->add_option("--truth", eval_truth, "ground-truth graph")
      ->required();
  eval_cmd->add_option("--prop", eval_prop, "proposal graph")->required();
  add_metric_options(eval_cmd, topo_cfg, apls_cfg);
  eval_cmd->add_option("--topo-csv", eval_topo_csv, "per-seed CSV file");
  eval_cmd->add_option("--apls-csv", eval_apls_csv, "per-pair CSV file");

  // roundtrip
  auto* rt_cmd = app.add_subcommand(
      "roundtrip", "synthesize, encode, perturb, decode and score");
  std::string rt_kind;
  gte::SynthSpec rt_spec = add_synth_options(rt_cmd, rt_kind);
  gte::RoundtripConfig rt_cfg;
  rt_cmd->add_option("--lambda", rt_cfg.encode.lambda, "meters per cell");
  rt_cmd->add_option("--dmax", rt_cfg.encode.d_max, "sectors per cell");
  rt_cmd->add_option("--d", rt_cfg.encode.d, "interpolation spacing (m)");
  add_decode_options(rt_cmd, rt_cfg.decode);
  rt_cmd->add_option("--sigma-p", rt_cfg.noise.sigma_p,
                     "probability channel noise std");
  rt_cmd->add_option("--sigma-vec", rt_cfg.noise.sigma_vec,
                     "vector channel noise std (m)");
  rt_cmd->add_option("--blur", rt_cfg.noise.blur_radius, "box blur radius");
  rt_cmd->add_option("--drop", rt_cfg.noise.drop_rate, "vertex drop fraction");
  add_metric_options(rt_cmd, rt_cfg.topo, rt_cfg.apls);
  std::string rt_out;
  rt_cmd->add_option("-o,--output", rt_out, "report CSV file (default stdout)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over a corpus");
  std::string sweep_kind;
  gte::SweepSpec sweep_spec;
  sweep_spec.corpus = add_synth_options(sweep_cmd, sweep_kind);
  sweep_cmd->add_option("--axis", sweep_spec.axis,
                        "p_thr, edge_thr, w, sigma_p, sigma_vec, d_max or d")
      ->required();
  sweep_cmd->add_option("--values", sweep_spec.values, "axis values")
      ->required();
  sweep_cmd->add_option("--replicates", sweep_spec.replicates,
                        "runs per value");
  gte::RoundtripConfig& sweep_base = sweep_spec.base;
  sweep_cmd->add_option("--lambda", sweep_base.encode.lambda,
                        "meters per cell");
  sweep_cmd->add_option("--dmax", sweep_base.encode.d_max, "sectors per cell");
  sweep_cmd->add_option("--d", sweep_base.encode.d,
                        "interpolation spacing (m)");
  add_decode_options(sweep_cmd, sweep_base.decode);
  sweep_cmd->add_option("--sigma-p", sweep_base.noise.sigma_p,
                        "probability channel noise std");
  sweep_cmd->add_option("--sigma-vec", sweep_base.noise.sigma_vec,
                        "vector channel noise std (m)");
  std::string sweep_out;
  sweep_cmd->add_option("-o,--output", sweep_out, "report CSV file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (synth_cmd->parsed()) {
    synth_spec.kind = gte::parse_synth_kind(synth_kind);
    gte::SpatialGraph g = gte::generate(synth_spec);
    gte::save_graph_file(g, synth_out);
    return kExitOk;
  }

  if (encode_cmd->parsed()) {
    gte::SpatialGraph g = gte::load_graph_file(encode_in);
    gte::SpatialGraph dense = gte::interpolate(g, encode_cfg.d);
    gte::ConflictResolution res =
        gte::resolve_conflicts(dense, encode_cfg.min_sep);
    gte::GteTensor t = gte::encode(res.graph, encode_cfg);
    gte::save_tensor_file(t, encode_out);
    return kExitOk;
  }

  if (decode_cmd->parsed()) {
    gte::GteTensor t = gte::load_tensor_file(decode_in);
    gte::DecodeResult r = gte::decode(t, decode_cfg);
    gte::save_graph_file(r.graph, decode_out);
    if (!decode_report.empty()) {
      std::ostringstream os;
      os << "slot_total,slot_connected,slot_unmatched,vertices,edges\n"
         << r.report.slot_total << ',' << r.report.slot_connected << ','
         << r.report.slot_unmatched << ',' << r.report.vertices << ','
         << r.report.edges << '\n';
      write_text_file(decode_report, os.str());
    }
    return kExitOk;
  }

  if (perturb_cmd->parsed()) {
    gte::GteTensor t = gte::load_tensor_file(perturb_in);
    gte::save_tensor_file(gte::perturb(t, noise_cfg), perturb_out);
    return kExitOk;
  }

  if (loss_cmd->parsed()) {
    gte::GteTensor pred = gte::load_tensor_file(loss_pred);
    gte::GteTensor truth = gte::load_tensor_file(loss_truth);
    gte::LossBreakdown l = gte::gte_loss(pred, truth);
    std::cout.precision(10);
    std::cout << "total,vertex_ce,edge_ce,vector_l2,cells,masked_cells\n"
              << l.total << ',' << l.vertex_ce << ',' << l.edge_ce << ','
              << l.vector_l2 << ',' << l.cells << ',' << l.masked_cells
              << '\n';
    if (l.cells > 0) {
      std::cout << "mean_per_cell " << l.total / static_cast<double>(l.cells)
                << '\n';
    }
    return kExitOk;
  }

  if (eval_cmd->parsed()) {
    gte::SpatialGraph truth = gte::load_graph_file(eval_truth);
    gte::SpatialGraph prop = gte::load_graph_file(eval_prop);
    gte::TopoResult t = gte::topo(truth, prop, topo_cfg);
    gte::AplsResult a = gte::apls(truth, prop, apls_cfg);
    if (!eval_topo_csv.empty()) {
      std::ostringstream os;
      os.precision(10);
      os << "seed_x,seed_y,matched,proposed,truth\n";
      for (const auto& s : t.seeds) {
        os << s.seed.x << ',' << s.seed.y << ',' << s.matched << ','
           << s.proposed << ',' << s.truth << '\n';
      }
      write_text_file(eval_topo_csv, os.str());
    }
    if (!eval_apls_csv.empty()) {
      std::ostringstream os;
      os.precision(10);
      os << "a_x,a_y,b_x,b_y,l_truth,l_prop,pair_score\n";
      for (const auto& p : a.pairs) {
        os << p.a.x << ',' << p.a.y << ',' << p.b.x << ',' << p.b.y << ','
           << p.l_truth << ',' << p.l_prop << ',' << p.score << '\n';
      }
      write_text_file(eval_apls_csv, os.str());
    }
    std::cout.precision(10);
    std::cout << t.precision << ' ' << t.recall << ' ' << t.f1 << ' '
              << a.score << '\n';
    return kExitOk;
  }

  if (rt_cmd->parsed()) {
    rt_spec.kind = gte::parse_synth_kind(rt_kind);
    rt_cfg.noise.seed = rt_spec.seed;
    gte::SpatialGraph truth = gte::generate(rt_spec);
    gte::RoundtripRow row = gte::roundtrip(truth, rt_cfg);
    std::string text = gte::report_header() + "\n" + gte::to_csv(row) + "\n";
    if (rt_out.empty()) {
      std::cout << text;
    } else {
      write_text_file(rt_out, text);
    }
    if (!row.error.empty()) {
      std::cerr << "error: " << row.error << '\n';
      return kExitValidation;
    }
    return kExitOk;
  }

  if (sweep_cmd->parsed()) {
    sweep_spec.corpus.kind = gte::parse_synth_kind(sweep_kind);
    std::vector<gte::RoundtripRow> rows = gte::sweep(sweep_spec);
    std::ostringstream os;
    os << gte::report_header() << '\n';
    for (const auto& row : rows) os << gte::to_csv(row) << '\n';
    write_text_file(sweep_out, os.str());
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gte::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const gte::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gte::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
