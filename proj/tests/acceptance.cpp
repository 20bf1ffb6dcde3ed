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


// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   acceptance <path to gmhdr binary>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gmhdr/companding.h"
#include "gmhdr/degradation.h"
#include "gmhdr/diffusion.h"
#include "gmhdr/error.h"
#include "gmhdr/exposure.h"
#include "gmhdr/formats.h"
#include "gmhdr/gainmap.h"
#include "gmhdr/metrics.h"
#include "oracles/brute_force.h"
#include "oracles/merge_floors.h"
#include "oracles/pu21_table.h"
#include "support/scenes.h"

namespace gmhdr {
namespace {

namespace fs = std::filesystem;
using testing::Rng;

// Pinned tolerances and budgets.
constexpr double kCodecSlack = 1e-12;
constexpr double kMuLawTol = 1e-12;
constexpr double kDiffusionTol = 1e-9;
constexpr double kPu21Tol = 1e-3;
constexpr double kPu21PsnrTol = 1e-6;
constexpr double kOffsetPsnrTol = 1e-9;
constexpr double kMergeMinDb = 35.0;
constexpr double kBudget1s = 1.0;
constexpr double kBudget5s = 5.0;
constexpr double kBudget10s = 10.0;
constexpr int kFuzzIterations = 10000;

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double bound_factor(const GainMapMeta& m) {
  const double delta = m.q_max * 0.5 / 255.0;
  if (m.variant == GainVariant::kExp2) return std::exp2(delta);
  return mulaw_expand_ext(1.0 + delta, m.mu) / mulaw_expand_ext(1.0, m.mu);
}

Outcome codec_round_trip() {
  Outcome o;
  Rng rng(1001);
  double worst_exp2 = 0.0;
  for (auto v : {GainVariant::kExp2, GainVariant::kInvMuLaw}) {
    for (int i = 0; i < 50; ++i) {
      const auto base = testing::random_image(rng, 32, 32, 0.0, 1.0);
      const double span = rng.uniform(0.5, 6.0);
      std::vector<double> hdr(base.data().size());
      for (std::size_t k = 0; k < hdr.size(); ++k) {
        const double x = 1.0 + rng.uniform() * span;
        const double m = v == GainVariant::kExp2 ? std::exp2(x) : mulaw_expand_ext(x, kDefaultMu);
        hdr[k] = (base.data()[k] + kDefaultAlpha) * m;
      }
      EncodeOptions opts;
      opts.variant = v;
      const LinearImage h(32, 32, hdr);
      const GainMap gm = encode(h, base, opts);
      const LinearImage out = decode(base, gm);
      const double f = bound_factor(gm.meta()) * (1 + kCodecSlack);
      for (std::size_t k = 0; k < hdr.size(); ++k) {
        const double r = out.data()[k] / hdr[k];
        o.check(r <= f && r >= 1 / f, std::string(gain_variant_name(v)) + " image " + std::to_string(i) +
                                          " ratio " + fmt(r) + " outside " + fmt(f));
        if (v == GainVariant::kExp2) worst_exp2 = std::max(worst_exp2, std::fabs(r - 1));
      }
    }
  }
  GainMapMeta q4;
  q4.q_max = 4.0;
  const double rel4 = bound_factor(q4) - 1;
  o.check(std::fabs(rel4 - 0.00545) < 1e-5, "q_max=4 bound " + fmt(rel4));
  if (o.pass) o.detail = "worst exp2 rel err " + fmt(worst_exp2) + ", q_max=4 bound " + fmt(rel4 * 100) + "%";
  return o;
}

Outcome mulaw_identity() {
  Outcome o;
  Rng rng(1002);
  double worst = 0.0;
  for (double mu : {10.0, 100.0, 5000.0}) {
    const MuLawParams p{mu};
    for (int i = 0; i < 10000; ++i) {
      const double x = rng.uniform();
      const double a = std::fabs(mulaw_inverse(mulaw_forward(x, p), p) - x);
      const double b = std::fabs(mulaw_forward(mulaw_inverse(x, p), p) - x);
      worst = std::max({worst, a, b});
    }
  }
  o.check(worst <= kMuLawTol, "max error " + fmt(worst));
  if (o.pass) o.detail = "max error " + fmt(worst);
  return o;
}

Outcome diffusion_identity() {
  Outcome o;
  const NoiseSchedule s = linear_schedule();
  NormalSampler sampler(1003);
  Rng rng(1003);
  const LatentShape shape{4, 8, 8};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t t = rng.index(s.num_steps());
    const LatentGrid z0 = sampler.grid(shape);
    const LatentGrid eps = sampler.grid(shape);
    const LatentGrid rec = one_step_x0(q_sample(z0, t, eps, s), eps, t, s);
    for (std::size_t k = 0; k < shape.size(); ++k) worst = std::max(worst, std::fabs(rec.data[k] - z0.data[k]));
  }
  o.check(worst <= kDiffusionTol, "recovery error " + fmt(worst));
  double amp_worst = 0.0;
  for (std::size_t t : {0u, 100u, 500u, 999u}) {
    const double delta = 0.01;
    const LatentGrid z0 = sampler.grid(shape);
    const LatentGrid eps = sampler.grid(shape);
    LatentGrid eh = eps;
    for (auto& v : eh.data) v += delta;
    const LatentGrid rec = one_step_x0(q_sample(z0, t, eps, s), eh, t, s);
    const double ab = s.alpha_bar(t);
    const double expected = delta * std::sqrt(1 - ab) / std::sqrt(ab);
    for (std::size_t k = 0; k < shape.size(); ++k) {
      amp_worst = std::max(amp_worst, std::fabs((z0.data[k] - rec.data[k]) - expected));
    }
  }
  o.check(amp_worst <= kDiffusionTol, "amplification mismatch " + fmt(amp_worst));
  if (o.pass) o.detail = "recovery " + fmt(worst) + ", amplification " + fmt(amp_worst);
  return o;
}

LinearImage oracle_merge(const ExposureStack& s) {
  std::vector<double> evs;
  for (const auto& f : s.frames()) evs.push_back(f.ev);
  std::vector<double> out(s.width() * s.height() * 3);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::vector<std::uint8_t> codes;
    for (const auto& f : s.frames()) codes.push_back(f.image.data()[k]);
    out[k] = oracles::merge_sample(codes, evs, s.reference_index(), s.gamma());
  }
  return LinearImage(s.width(), s.height(), std::move(out));
}

Outcome mask_correctness() {
  Outcome o;
  const testing::GhostFixture fx = testing::ghost_fixture();
  const BoolMask m = compute_mask(fx.ground_truth, merge_baseline(fx.stack));
  const auto expected = oracles::degradation_mask(fx.ground_truth, oracle_merge(fx.stack), 4.0 / 255.0, 100.0);
  std::size_t diffs = 0;
  for (std::size_t p = 0; p < m.size(); ++p) diffs += m[p] != static_cast<bool>(expected[p]);
  o.check(diffs == 0, std::to_string(diffs) + " pixels differ from oracle");
  o.check(m.count() > 0, "fixture produced an empty mask");
  const double s = 4.0 / 255.0;
  const LinearImage zero = LinearImage::filled(1, 1, 0.0);
  o.check(!mask_from_tonemapped(zero, LinearImage::filled(1, 1, s), s)[0], "boundary sample masked");
  if (o.pass) o.detail = std::to_string(m.count()) + " of 256 pixels masked, oracle match exact";
  return o;
}

Outcome merge_fidelity() {
  Outcome o;
  const std::vector<double> evs = {-2.0, 0.0, 2.0};
  double lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    const LinearImage gt = testing::merge_scene(i);
    const LinearImage est = merge_baseline(synth_stack(gt, evs, 2.2));
    const DomainPair d = map_to_domain(gt, est, MetricDomain::kMuLaw);
    double sq = 0.0;
    std::size_t n = 0;
    for (std::size_t p = 0; p < gt.pixel_count(); ++p) {
      const double* g = gt.data().data() + 3 * p;
      if (std::max({g[0], g[1], g[2]}) * 0.25 >= 1.0) continue;
      for (std::size_t c = 0; c < 3; ++c) {
        const double diff = d.a[3 * p + c] - d.b[3 * p + c];
        sq += diff * diff;
        ++n;
      }
    }
    const double db = psnr_from_mse(sq / static_cast<double>(n), 1.0);
    const auto& floor = oracles::kMergeFloors[i];
    o.check(db >= floor.min_psnr_db && db > kMergeMinDb,
            std::string(floor.scene) + " " + fmt(db) + " dB below floor " + fmt(floor.min_psnr_db));
    lowest = std::min(lowest, db);
  }
  if (o.pass) o.detail = "lowest scene " + fmt(lowest) + " dB";
  return o;
}

Outcome pu21_match() {
  Outcome o;
  double worst = 0.0;
  for (const auto& pt : oracles::kPu21BandingGlare) {
    worst = std::max(worst, std::fabs(pu21_encode(pt.luminance) - pt.pu));
  }
  o.check(worst <= kPu21Tol, "table error " + fmt(worst));
  Rng rng(1006);
  const auto a = testing::random_image(rng, 24, 24, 0.0, 4.0);
  const auto b = map_pixels(a, [&](double v) { return v * rng.uniform(0.8, 1.2); });
  const double lib = psnr(a, b, MetricDomain::kPu21);
  const double ref = oracles::pu21_psnr(a, b, 100.0);
  o.check(std::fabs(lib - ref) <= kPu21PsnrTol, "PU21-PSNR " + fmt(lib) + " vs oracle " + fmt(ref));
  if (o.pass) o.detail = "table error " + fmt(worst) + " PU, PSNR diff " + fmt(std::fabs(lib - ref)) + " dB";
  return o;
}

Outcome metric_sanity() {
  Outcome o;
  Rng rng(1007);
  const auto a = testing::random_image(rng, 16, 16, 0.0, 0.9);
  o.check(psnr(a, a, MetricDomain::kPu21) == std::numeric_limits<double>::infinity(), "PSNR(a,a) not inf");
  o.check(ssim(a, a, MetricDomain::kPu21) == 1.0, "SSIM(a,a) != 1");
  const double p = psnr(a, map_pixels(a, [](double v) { return v + 0.1; }), MetricDomain::kLinear);
  o.check(std::fabs(p - 20.0) <= kOffsetPsnrTol, "offset PSNR " + fmt(p));
  GainMapMeta m;
  const GainMap g0(4, 4, std::vector<std::uint8_t>(48, 100), m);
  const GainMap g1(4, 4, std::vector<std::uint8_t>(48, 101), m);
  o.check(gm_l1(g0, g1) == 1.0 / 255.0, "gm_l1 of one-code offset " + fmt(gm_l1(g0, g1)));
  if (o.pass) o.detail = "offset PSNR " + fmt(p) + " dB";
  return o;
}

Bytes mutate(Rng& rng, Bytes b) {
  const int edits = 1 + static_cast<int>(rng.index(4));
  for (int i = 0; i < edits; ++i) {
    const auto kind = rng.index(4);
    if (b.empty() || kind == 0) {
      b.insert(b.begin() + rng.index(b.size() + 1), rng.byte());
    } else if (kind == 1) {
      b[rng.index(b.size())] = rng.byte();
    } else if (kind == 2) {
      b.resize(rng.index(b.size()));
    } else {
      b.erase(b.begin() + rng.index(b.size()));
    }
  }
  return b;
}

// Returns the number of inputs that escaped as something other than gmhdr::Error.
int fuzz(const std::function<void(const Bytes&)>& parse, const Bytes& seed, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  int bad = 0;
  for (int i = 0; i < kFuzzIterations; ++i) {
    Bytes in;
    if (i % 4 == 0) {
      in.resize(rng.index(64));
      for (auto& x : in) x = rng.byte();
    } else {
      in = mutate(rng, seed);
    }
    try {
      parse(in);
    } catch (const Error&) {
    } catch (...) {
      ++bad;
    }
  }
  return bad;
}

Outcome format_round_trips() {
  Outcome o;
  Rng rng(1008);
  std::vector<double> d(13 * 7 * 3);
  for (auto& v : d) v = static_cast<float>(std::exp(rng.uniform(-10.0, 6.0)));
  const LinearImage img(13, 7, d);
  o.check(read_pfm(write_pfm(img)) == img, "PFM round trip not bit-exact");
  o.check(read_pfm(write_pfm(img, ByteOrder::kBig)) == img, "big-endian PFM round trip not bit-exact");
  std::vector<std::uint8_t> codes(13 * 7 * 3);
  for (auto& c : codes) c = rng.byte();
  const Ldr8Image ldr(13, 7, codes, Transfer::kGammaEncoded);
  o.check(read_ppm(write_ppm(ldr)) == ldr, "PPM round trip not bit-exact");
  const GrayImage gray{13, 3, std::vector<std::uint8_t>(codes.begin(), codes.begin() + 39)};
  o.check(read_pgm(write_pgm(gray)) == gray, "PGM round trip not bit-exact");

  const LinearImage back = read_rgbe(write_rgbe(img));
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    const double* a = img.data().data() + 3 * p;
    const double* b = back.data().data() + 3 * p;
    const auto enc = rgbe_encode_pixel(a[0], a[1], a[2]);
    const double step = std::ldexp(1.0, enc[3] - 128) / 256.0;
    const double maxc = std::max({a[0], a[1], a[2]});
    for (int c = 0; c < 3; ++c) {
      o.check(std::fabs(a[c] - b[c]) <= step, "RGBE pixel " + std::to_string(p) + " outside shared-exponent bound");
      if (a[c] == maxc) o.check(std::fabs(a[c] - b[c]) <= maxc / 256.0, "RGBE max channel error above 1/256");
    }
  }

  GainMapSidecar side;
  side.width = side.height = 4;
  const std::string text = write_sidecar(side);
  const int crashes =
      fuzz([](const Bytes& b) { read_rgbe(b); }, write_rgbe(img), 1) +
      fuzz([](const Bytes& b) { read_pfm(b); }, write_pfm(img), 2) +
      fuzz([](const Bytes& b) { read_ppm(b); }, write_ppm(ldr), 3) +
      fuzz([](const Bytes& b) { read_pgm(b); }, write_pgm(gray), 4) +
      fuzz([](const Bytes& b) { read_mask_pgm(b); }, write_mask_pgm(BoolMask(2, 2, {1, 0, 0, 1})), 5) +
      fuzz([](const Bytes& b) { read_sidecar(std::string_view(reinterpret_cast<const char*>(b.data()), b.size())); },
           Bytes(text.begin(), text.end()), 6);
  o.check(crashes == 0, std::to_string(crashes) + " fuzz inputs escaped as untyped errors");
  if (o.pass) o.detail = "6 parsers x " + std::to_string(kFuzzIterations) + " fuzz inputs, 0 untyped errors";
  return o;
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool run_pipeline(const std::string& cli, const fs::path& dir, std::string& failure) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (int i = 0; i < 10; ++i) {
    const std::string name = i < 5 ? "ramp" + std::to_string(i) : "checker" + std::to_string(i - 5);
    const fs::path sd = dir / name;
    fs::create_directories(sd);
    const std::string gt = (sd / (i % 2 ? "gt.hdr" : "gt.pfm")).string();
    write_hdr_file(gt, testing::merge_scene(i));
    const std::string p = sd.string() + "/";
    const std::string q = " 2>>" + p + "stderr.log";
    const std::vector<std::string> steps = {
        cli + " synth " + gt + " --out-dir " + p + "stack" + q,
        cli + " merge " + p + "stack/stack.manifest --out " + p + "merged.pfm" + q,
        cli + " gm-encode " + p + "merged.pfm " + p + "stack/stack.manifest --out " + p + "gm.ppm" + q,
        cli + " gm-decode " + p + "stack/stack.manifest " + p + "gm.ppm --out " + p + "decoded.pfm" + q,
        cli + " mask " + gt + " " + p + "decoded.pfm --out " + p + "mask.pgm > " + p + "mask.txt" + q,
        cli + " eval " + gt + " " + p + "decoded.pfm > " + p + "eval.csv" + q,
    };
    for (const auto& s : steps) {
      if (shell(s) != 0) {
        failure = "step failed: " + s;
        return false;
      }
    }
  }
  return true;
}

Outcome end_to_end(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.check(false, "no CLI path given");
    return o;
  }
  const fs::path root = fs::temp_directory_path() / "gmhdr_acceptance";
  std::string failure;
  const auto t0 = std::chrono::steady_clock::now();
  const bool ok = run_pipeline(cli, root / "a", failure) && run_pipeline(cli, root / "b", failure);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.check(ok, failure);
  std::size_t compared = 0;
  if (ok) {
    for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
      if (!e.is_regular_file() || e.path().filename() == "stderr.log") continue;
      const fs::path twin = root / "b" / fs::relative(e.path(), root / "a");
      const bool same = fs::exists(twin) && read_file(e.path()) == read_file(twin);
      o.check(same, "artifact differs: " + fs::relative(e.path(), root / "a").string());
      ++compared;
    }
  }
  o.check(secs / 2 < kBudget10s, "pipeline took " + fmt(secs / 2) + " s");
  if (o.pass) {
    o.detail = std::to_string(compared) + " artifacts byte-identical, " + fmt(secs / 2) + " s per run";
    fs::remove_all(root);
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace gmhdr

int main(int argc, char** argv) {
  using namespace gmhdr;
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria = {
      {1, "gain map codec round trip", kBudget1s, codec_round_trip},
      {2, "mu-law inverse identity", kBudget1s, mulaw_identity},
      {3, "one-step x0 identity", kBudget1s, diffusion_identity},
      {4, "degradation mask vs oracle", kBudget1s, mask_correctness},
      {5, "merge fidelity floors", kBudget5s, merge_fidelity},
      {6, "PU21 oracle match", std::numeric_limits<double>::infinity(), pu21_match},
      {7, "metric sanity", std::numeric_limits<double>::infinity(), metric_sanity},
      {8, "format round trips and fuzz", std::numeric_limits<double>::infinity(), format_round_trips},
      {9, "end-to-end determinism", 2 * kBudget10s, [&] { return end_to_end(cli); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < c.budget_s, "over time budget");
    failed += !o.pass;
    std::printf("%s [%d] %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
