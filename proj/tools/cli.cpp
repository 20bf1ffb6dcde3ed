/*
 * Copyright 2026 The gmhdr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "gmhdr/companding.h"
#include "gmhdr/degradation.h"
#include "gmhdr/diffusion.h"
#include "gmhdr/error.h"
#include "gmhdr/exposure.h"
#include "gmhdr/formats.h"
#include "gmhdr/gainmap.h"
#include "gmhdr/kernels.h"
#include "gmhdr/metrics.h"

namespace gmhdr::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kManifestKind = "exposure_stack";
constexpr std::string_view kManifestExt = ".manifest";
constexpr std::string_view kManifestName = "stack.manifest";
constexpr double kDiffcheckTolerance = 1e-9;

struct Globals {
  std::string simd = "auto";
  std::string format = "auto";
};

std::optional<HdrFormat> hdr_format_flag(const Globals& g) {
  if (g.format == "auto") return std::nullopt;
  auto f = parse_hdr_format(g.format);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "unknown --format '" + g.format + "'");
  return f;
}

// Prefixes errors raised while decoding a file with its path.
template <typename F>
auto with_path(const fs::path& path, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    const std::string p = path.string();
    if (std::string_view(e.what()).find(p) != std::string_view::npos) throw;
    throw Error(e.code(), p + ": " + e.what());
  }
}

std::string read_text(const fs::path& path) {
  const Bytes b = read_file(path);
  return std::string(b.begin(), b.end());
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (first == last || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw Error(ErrorCode::kBadNumber, std::string(what) + ": '" + std::string(s) + "' is not a finite number");
  }
  return v;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = s.find(',', pos);
    std::string item(s.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    out.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_evs(std::string_view s) {
  std::vector<double> evs;
  for (const auto& item : split_list(s)) evs.push_back(parse_double(item, "--evs"));
  return evs;
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_sidecar_real(v[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exposure stack manifest: sidecar grammar, frame paths relative to the
// manifest's directory.

std::string frame_key(std::size_t i) { return "frame" + std::to_string(i); }

void write_stack(const ExposureStack& stack, const fs::path& dir) {
  SidecarMeta m;
  m.set("format_version", std::to_string(kSidecarFormatVersion));
  m.set("kind", std::string(kManifestKind));
  m.set("gamma", format_sidecar_real(stack.gamma()));
  std::vector<double> evs;
  for (const auto& f : stack.frames()) evs.push_back(f.ev);
  m.set("evs", join_reals(evs));
  m.set("reference_index", std::to_string(stack.reference_index()));
  m.set("width", std::to_string(stack.width()));
  m.set("height", std::to_string(stack.height()));
  m.set("frame_count", std::to_string(evs.size()));
  for (std::size_t i = 0; i < evs.size(); ++i) {
    const std::string name = frame_key(i) + ".ppm";
    write_file(dir / name, write_ppm(stack.frames()[i].image));
    m.set(frame_key(i), name);
  }
  write_text_file(dir / kManifestName, format_sidecar(m));
}

ExposureStack read_stack(const fs::path& manifest) {
  const SidecarMeta m = with_path(manifest, [&] { return parse_sidecar(read_text(manifest)); });
  return with_path(manifest, [&] {
    if (sidecar_size(m, "format_version") != kSidecarFormatVersion) {
      throw Error(ErrorCode::kUnsupported, "manifest: unsupported format_version");
    }
    if (sidecar_require(m, "kind") != kManifestKind) {
      throw Error(ErrorCode::kBadHeader, "manifest: key 'kind' must be " + std::string(kManifestKind));
    }
    const double gamma = sidecar_real(m, "gamma");
    std::vector<double> evs;
    for (const auto& item : split_list(sidecar_require(m, "evs"))) evs.push_back(parse_double(item, "manifest: key 'evs'"));
    const std::size_t count = sidecar_size(m, "frame_count");
    if (count != evs.size()) {
      throw Error(ErrorCode::kInvalidValue, "manifest: frame_count does not match the evs list");
    }
    const fs::path dir = manifest.parent_path();
    std::vector<ExposureFrame> frames;
    for (std::size_t i = 0; i < count; ++i) {
      const fs::path p = dir / sidecar_require(m, frame_key(i));
      Ldr8Image img = with_path(p, [&] { return read_ppm(read_file(p), Transfer::kGammaEncoded); });
      frames.push_back({std::move(img), evs[i]});
    }
    ExposureStack stack(std::move(frames), gamma);
    if (sidecar_size(m, "reference_index") != stack.reference_index()) {
      throw Error(ErrorCode::kInvalidValue, "manifest: reference_index does not point at the ev 0 frame");
    }
    return stack;
  });
}

bool is_manifest(const fs::path& p) { return p.extension() == kManifestExt; }

// A base layer is either a linear HDR file in [0, 1] or the reference frame of
// a stack manifest, linearized.
LinearImage read_base(const fs::path& p, const Globals& g) {
  if (is_manifest(p)) {
    const ExposureStack stack = read_stack(p);
    return linearize_ldr(stack.reference().image, 0.0, stack.gamma());
  }
  return read_hdr_file(p, hdr_format_flag(g));
}

LinearImage read_hdr(const fs::path& p, const Globals& g) { return read_hdr_file(p, hdr_format_flag(g)); }

GainMap read_gain_map(const fs::path& p) {
  const fs::path side = sidecar_path_for(p);
  const Bytes ppm = read_file(p);
  const std::string text = read_text(side);
  return with_path(p, [&] { return gain_map_from_files(ppm, text); });
}

// ---------------------------------------------------------------------------
// Subcommands.

struct SynthArgs {
  std::string input;
  std::string evs = "-2,0,2";
  double gamma = kDefaultGamma;
  std::string out_dir = ".";
};

int do_synth(const SynthArgs& a, const Globals& g, std::ostream&, std::ostream& err) {
  const LinearImage hdr = read_hdr(a.input, g);
  const std::vector<double> evs = parse_evs(a.evs);
  const ExposureStack stack = synth_stack(hdr, evs, a.gamma);
  fs::create_directories(a.out_dir);
  write_stack(stack, a.out_dir);
  err << "synth: " << stack.frames().size() << " frames, " << (fs::path(a.out_dir) / kManifestName).string() << "\n";
  return kExitOk;
}

struct MergeArgs {
  std::string manifest;
  std::string out = "merged.pfm";
};

int do_merge(const MergeArgs& a, const Globals& g, std::ostream&, std::ostream& err) {
  const ExposureStack stack = read_stack(a.manifest);
  write_hdr_file(a.out, merge_baseline(stack), hdr_format_flag(g));
  err << "merge: " << stack.width() << "x" << stack.height() << " -> " << a.out << "\n";
  return kExitOk;
}

struct EncodeArgs {
  std::string hdr;
  std::string base;
  std::string variant = "exp2";
  std::string qmax = "auto";
  double mu = kDefaultMu;
  double alpha = kDefaultAlpha;
  std::string out = "gm.ppm";
};

int do_encode(const EncodeArgs& a, const Globals& g, std::ostream&, std::ostream& err) {
  EncodeOptions opts;
  const auto variant = parse_gain_variant(a.variant);
  if (!variant) throw Error(ErrorCode::kInvalidArgument, "unknown --variant '" + a.variant + "'");
  opts.variant = *variant;
  if (a.qmax != "auto") opts.q_max = parse_double(a.qmax, "--qmax");
  opts.mu = a.mu;
  opts.alpha = a.alpha;

  const LinearImage hdr = read_hdr(a.hdr, g);
  const LinearImage base = read_base(a.base, g);
  const GainMap gm = encode(hdr, base, opts);

  GainMapSidecar side{gm.meta(), gm.width(), gm.height(), {}};
  const Ldr8Image codes(gm.width(), gm.height(),
                        std::vector<std::uint8_t>(gm.codes().begin(), gm.codes().end()),
                        Transfer::kLinearCode);
  write_file(a.out, write_ppm(codes));
  write_text_file(sidecar_path_for(a.out), write_sidecar(side));
  err << "gm-encode: q_max=" << format_real(gm.meta().q_max)
      << " clip_fraction=" << format_real(gm.meta().clip_fraction) << " -> " << a.out << "\n";
  return kExitOk;
}

struct DecodeArgs {
  std::string base;
  std::string gain_map;
  std::string out = "out.pfm";
};

int do_decode(const DecodeArgs& a, const Globals& g, std::ostream&, std::ostream& err) {
  const LinearImage base = read_base(a.base, g);
  const GainMap gm = read_gain_map(a.gain_map);
  write_hdr_file(a.out, decode(base, gm), hdr_format_flag(g));
  err << "gm-decode: -> " << a.out << "\n";
  return kExitOk;
}

struct MaskArgs {
  std::string gt;
  std::string est;
  double sigma = kDefaultMaskSigma;
  double mu = kDefaultMu;
  std::string out = "mask.pgm";
};

int do_mask(const MaskArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const LinearImage gt = read_hdr(a.gt, g);
  const LinearImage est = read_hdr(a.est, g);
  const BoolMask mask = compute_mask(gt, est, {a.sigma, a.mu});
  write_file(a.out, write_mask_pgm(mask));
  out << "mask_fraction=" << format_real(mask_fraction(mask)) << "\n";
  err << "mask: " << mask.count() << " of " << mask.size() << " pixels -> " << a.out << "\n";
  return kExitOk;
}

struct EvalArgs {
  std::string gt;
  std::string est;
  std::string metrics = "psnr,ssim,gm_l1,mulaw_l1";
  std::string domains = "linear,mulaw,pu21";
  double peak = 100.0;
  double mu = kDefaultMu;
  std::string pu21 = "banding_glare";
  std::string gm_gt;
  std::string gm_est;
};

int do_eval(const EvalArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  MetricParams params;
  params.mu = a.mu;
  params.l_peak = a.peak;
  const auto pv = parse_pu21_variant(a.pu21);
  if (!pv) throw Error(ErrorCode::kInvalidArgument, "unknown --pu21 variant '" + a.pu21 + "'");
  params.pu21_variant = *pv;

  std::vector<MetricDomain> domains;
  for (const auto& d : split_list(a.domains)) {
    const auto parsed = parse_domain(d);
    if (!parsed) throw Error(ErrorCode::kInvalidArgument, "unknown domain '" + d + "'");
    domains.push_back(*parsed);
  }
  const std::vector<std::string> metrics = split_list(a.metrics);
  for (const auto& m : metrics) {
    if (m != "psnr" && m != "ssim" && m != "gm_l1" && m != "mulaw_l1") {
      throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + m + "'");
    }
  }
  if (a.gm_gt.empty() != a.gm_est.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--gm-gt and --gm-est must be given together");
  }

  const LinearImage gt = read_hdr(a.gt, g);
  const LinearImage est = read_hdr(a.est, g);
  require_same_dims(gt.width(), gt.height(), est.width(), est.height(), "eval");

  std::vector<MetricReport> rows;
  auto add = [&](const std::string& name, MetricDomain d, double v) {
    rows.push_back({name, d, v, report_params(name, d, params)});
  };
  for (const auto& m : metrics) {
    if (m == "psnr" || m == "ssim") {
      for (MetricDomain d : domains) add(m, d, m == "psnr" ? psnr(gt, est, d, params) : ssim(gt, est, d, params));
    } else if (m == "mulaw_l1") {
      add(m, MetricDomain::kMuLaw, mulaw_l1(est, gt, params.mu));
    } else if (a.gm_gt.empty()) {
      err << "eval: gm_l1 skipped (needs --gm-gt and --gm-est)\n";
    } else {
      add(m, MetricDomain::kLinear, gm_l1(read_gain_map(a.gm_est), read_gain_map(a.gm_gt)));
    }
  }
  out << kCsvHeader << "\n";
  for (const auto& r : rows) out << to_csv_row(r) << "\n";
  return kExitOk;
}

struct DiffcheckArgs {
  std::size_t steps = kDefaultSteps;
  std::size_t t = 999;
  std::uint64_t seed = 7;
  std::string shape = "4x8x8";
  double beta_start = kDefaultBetaStart;
  double beta_end = kDefaultBetaEnd;
};

LatentShape parse_shape(std::string_view s) {
  std::size_t dims[3] = {0, 0, 0};
  std::size_t i = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? s.find('x', i) : s.size();
    if (end == std::string_view::npos) break;
    const auto part = s.substr(i, end - i);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), dims[k]);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || dims[k] == 0) {
      dims[0] = 0;
      break;
    }
    i = end + 1;
  }
  if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0) {
    throw Error(ErrorCode::kInvalidArgument, "--shape must be CxHxW with positive sizes, got '" + std::string(s) + "'");
  }
  return {dims[0], dims[1], dims[2]};
}

int do_diffcheck(const DiffcheckArgs& a, const Globals&, std::ostream& out, std::ostream& err) {
  const NoiseSchedule sched = linear_schedule(a.steps, a.beta_start, a.beta_end);
  const LatentShape shape = parse_shape(a.shape);
  NormalSampler rng(a.seed);
  const LatentGrid z0 = rng.grid(shape);
  const LatentGrid eps = rng.grid(shape);
  const LatentGrid rec = one_step_x0(q_sample(z0, a.t, eps, sched), eps, a.t, sched);
  double max_err = 0.0;
  for (std::size_t k = 0; k < z0.data.size(); ++k) max_err = std::max(max_err, std::abs(rec.data[k] - z0.data[k]));
  out << "max_abs_error=" << format_real(max_err) << "\n";
  err << "diffcheck: t=" << a.t << " alpha_bar=" << format_real(sched.alpha_bar(a.t)) << "\n";
  return max_err <= kDiffcheckTolerance ? kExitOk : kExitContract;
}

// ---------------------------------------------------------------------------

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kMetadataMismatch:
      return kExitContract;
    default:
      return kExitUsage;
  }
}

struct IsaOverrideGuard {
  ~IsaOverrideGuard() { kernels::set_isa_override(std::nullopt); }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gain-map HDR toolkit: exposure stacks, gain-map codec, degradation masks and metrics.", "gmhdr"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Exit codes: 0 success, 2 usage/IO/parse error, 3 dimension or metadata mismatch.\n"
      "HDR files are chosen by extension (.hdr/.rgbe/.pic RGBE, .pfm PFM) unless --format is set.");

  Globals g;
  app.add_option("--simd", g.simd, "Kernel set: auto, scalar or avx2")->capture_default_str();
  app.add_option("--format", g.format, "HDR file format override: auto, rgbe or pfm")->capture_default_str();

  std::function<int(std::ostream&, std::ostream&)> action;

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Synthesize a bracketed LDR stack from an HDR image");
  s->add_option("hdr", synth.input, "Input HDR image")->required();
  s->add_option("--evs", synth.evs, "Comma-separated exposure offsets in stops; must contain 0")->capture_default_str();
  s->add_option("--gamma", synth.gamma, "Display gamma of the LDR frames")->capture_default_str();
  s->add_option("--out-dir", synth.out_dir, "Directory for frame PPMs and stack.manifest")->capture_default_str();
  s->callback([&] { action = [&](std::ostream& o, std::ostream& e) { return do_synth(synth, g, o, e); }; });

  MergeArgs merge;
  auto* m = app.add_subcommand("merge", "Merge an exposure stack into a linear HDR image");
  m->add_option("manifest", merge.manifest, "stack.manifest written by synth")->required();
  m->add_option("--out", merge.out, "Output HDR image")->capture_default_str();
  m->callback([&] { action = [&](std::ostream& o, std::ostream& e) { return do_merge(merge, g, o, e); }; });

  EncodeArgs enc;
  auto* ge = app.add_subcommand("gm-encode", "Encode an 8-bit gain map of an HDR image over a base layer");
  ge->add_option("hdr", enc.hdr, "Target HDR image")->required();
  ge->add_option("base", enc.base, "Linear base layer in [0,1] (.pfm/.hdr) or a stack manifest")->required();
  ge->add_option("--variant", enc.variant, "Expansion curve: exp2 or mulaw")->capture_default_str();
  ge->add_option("--qmax", enc.qmax, "Gain range: auto or a positive real")->capture_default_str();
  ge->add_option("--mu", enc.mu, "mu of the mulaw expansion curve")->capture_default_str();
  ge->add_option("--alpha", enc.alpha, "Base layer offset")->capture_default_str();
  ge->add_option("--out", enc.out, "Output gain map PPM; metadata goes to <out>.meta")->capture_default_str();
  ge->callback([&] { action = [&](std::ostream& o, std::ostream& e) { return do_encode(enc, g, o, e); }; });

  DecodeArgs dec;
  auto* gd = app.add_subcommand("gm-decode", "Reconstruct HDR from a base layer and a gain map");
  gd->add_option("base", dec.base, "Linear base layer in [0,1] (.pfm/.hdr) or a stack manifest")->required();
  gd->add_option("gain_map", dec.gain_map, "Gain map PPM with its .meta sidecar")->required();
  gd->add_option("--out", dec.out, "Output HDR image")->capture_default_str();
  gd->callback([&] { action = [&](std::ostream& o, std::ostream& e) { return do_decode(dec, g, o, e); }; });

  MaskArgs mask;
  auto* mk = app.add_subcommand("mask", "Degradation mask of an HDR estimate; prints mask_fraction");
  mk->add_option("gt", mask.gt, "Ground-truth HDR image")->required();
  mk->add_option("est", mask.est, "Estimated HDR image")->required();
  mk->add_option("--sigma", mask.sigma, "Threshold on the mean mu-law channel difference (4/255)")->capture_default_str();
  mk->add_option("--mu", mask.mu, "mu of the tone map")->capture_default_str();
  mk->add_option("--out", mask.out, "Output mask PGM (255 = degraded)")->capture_default_str();
  mk->callback([&] { action = [&](std::ostream& o, std::ostream& e) { return do_mask(mask, g, o, e); }; });

  EvalArgs ev;
  auto* ea = app.add_subcommand("eval", "Compare two HDR images; CSV on standard output");
  ea->add_option("gt", ev.gt, "Ground-truth HDR image")->required();
  ea->add_option("est", ev.est, "Estimated HDR image")->required();
  ea->add_option("--metrics", ev.metrics, "Comma-separated: psnr, ssim, gm_l1, mulaw_l1")->capture_default_str();
  ea->add_option("--domains", ev.domains, "Domains for psnr/ssim: linear, mulaw, pu21")->capture_default_str();
  ea->add_option("--peak", ev.peak, "Luminance in cd/m^2 of normalized 1.0 for pu21")->capture_default_str();
  ea->add_option("--mu", ev.mu, "mu of the mulaw domain")->capture_default_str();
  ea->add_option("--pu21", ev.pu21, "PU21 variant: banding, banding_glare, peaks, peaks_glare")->capture_default_str();
  ea->add_option("--gm-gt", ev.gm_gt, "Ground-truth gain map PPM for gm_l1")->default_str("none");
  ea->add_option("--gm-est", ev.gm_est, "Estimated gain map PPM for gm_l1")->default_str("none");
  ea->footer("Output header: " + std::string(kCsvHeader) +
             "\nparams are semicolon-joined key=value pairs. Identical images give psnr=inf.");
  ea->callback([&] { action = [&](std::ostream& o, std::ostream& e) { return do_eval(ev, g, o, e); }; });

  DiffcheckArgs dc;
  auto* d = app.add_subcommand("diffcheck", "Check one-step x0 recovery on seeded random latents");
  d->add_option("--steps", dc.steps, "Schedule length")->capture_default_str();
  d->add_option("--t", dc.t, "Timestep index")->capture_default_str();
  d->add_option("--seed", dc.seed, "Seed of the mt19937_64 + Box-Muller sampler")->capture_default_str();
  d->add_option("--shape", dc.shape, "Latent shape CxHxW")->capture_default_str();
  d->add_option("--beta-start", dc.beta_start, "First beta of the linear schedule")->capture_default_str();
  d->add_option("--beta-end", dc.beta_end, "Last beta of the linear schedule")->capture_default_str();
  d->footer("Exits 3 if the error exceeds 1e-9.");
  d->callback([&] { action = [&](std::ostream& o, std::ostream& e) { return do_diffcheck(dc, g, o, e); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  IsaOverrideGuard guard;
  try {
    if (g.simd != "auto") {
      const auto isa = kernels::parse_isa(g.simd);
      if (!isa) throw Error(ErrorCode::kInvalidArgument, "unknown --simd '" + g.simd + "'");
      kernels::set_isa_override(*isa);
    }
    return action(out, err);
  } catch (const Error& e) {
    err << "gmhdr: error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    err << "gmhdr: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "gmhdr: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace gmhdr::cli
