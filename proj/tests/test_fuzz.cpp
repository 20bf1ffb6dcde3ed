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


#include <functional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gmhdr/error.h"
#include "gmhdr/formats.h"
#include "support/scenes.h"

namespace gmhdr {
namespace {

using testing::Rng;

constexpr int kIterations = 10000;

using Parser = std::function<void(const Bytes&)>;

Bytes mutate(Rng& rng, Bytes b) {
  const int edits = 1 + static_cast<int>(rng.index(4));
  for (int i = 0; i < edits; ++i) {
    switch (rng.index(5)) {
      case 0:
        if (!b.empty()) b[rng.index(b.size())] = rng.byte();
        break;
      case 1:
        if (!b.empty()) b.resize(rng.index(b.size()));
        break;
      case 2:
        b.insert(b.begin() + rng.index(b.size() + 1), rng.byte());
        break;
      case 3:
        if (!b.empty()) b.erase(b.begin() + rng.index(b.size()));
        break;
      default:
        if (!b.empty()) b[rng.index(b.size())] ^= static_cast<std::uint8_t>(1u << rng.index(8));
    }
  }
  return b;
}

// Runs the parser on random bytes and on mutations of the seeds. Only
// gmhdr::Error may escape; anything else fails the test.
void fuzz(const Parser& parse, const std::vector<Bytes>& seeds, std::uint64_t seed) {
  Rng rng(seed);
  int structured = 0;
  for (int i = 0; i < kIterations; ++i) {
    Bytes input;
    if (i % 4 == 0) {
      input.resize(rng.index(64));
      for (auto& x : input) x = rng.byte();
    } else {
      input = mutate(rng, seeds[rng.index(seeds.size())]);
    }
    try {
      parse(input);
    } catch (const Error& e) {
      ++structured;
      EXPECT_TRUE(e.is_parse_error() || e.code() == ErrorCode::kInvalidValue) << e.what();
    } catch (const std::exception& e) {
      FAIL() << "iteration " << i << " raised a non-library exception: " << e.what();
    }
  }
  EXPECT_GT(structured, 0);
}

std::vector<Bytes> hdr_seeds(const std::function<Bytes(const LinearImage&)>& write) {
  Rng rng(91);
  return {write(testing::random_image(rng, 1, 1, 0.0, 2.0)), write(testing::random_image(rng, 9, 2, 0.0, 2.0)),
          write(LinearImage::filled(12, 3, 0.25))};
}

TEST(Fuzz, Rgbe) {
  fuzz([](const Bytes& b) { read_rgbe(b); }, hdr_seeds([](const LinearImage& i) { return write_rgbe(i); }), 1);
}

TEST(Fuzz, Pfm) {
  fuzz([](const Bytes& b) { read_pfm(b); }, hdr_seeds([](const LinearImage& i) { return write_pfm(i); }), 2);
}

TEST(Fuzz, Ppm) {
  const std::vector<Bytes> seeds = {write_ppm(Ldr8Image(2, 2, std::vector<std::uint8_t>(12, 9), Transfer::kGammaEncoded)),
                                    write_ppm(Ldr8Image(1, 1, {1, 2, 3}, Transfer::kGammaEncoded))};
  fuzz([](const Bytes& b) { read_ppm(b); }, seeds, 3);
}

TEST(Fuzz, Pgm) {
  const std::vector<Bytes> seeds = {write_pgm(GrayImage{3, 2, {0, 1, 2, 3, 4, 5}})};
  fuzz([](const Bytes& b) { read_pgm(b); }, seeds, 4);
}

TEST(Fuzz, MaskPgm) {
  const std::vector<Bytes> seeds = {write_mask_pgm(BoolMask(3, 2, {1, 0, 1, 0, 0, 1}))};
  fuzz([](const Bytes& b) { read_mask_pgm(b); }, seeds, 5);
}

TEST(Fuzz, Sidecar) {
  GainMapSidecar s;
  s.width = 4;
  s.height = 4;
  const std::string text = write_sidecar(s) + "x_custom=1\n";
  fuzz([](const Bytes& b) { read_sidecar(std::string_view(reinterpret_cast<const char*>(b.data()), b.size())); },
       {Bytes(text.begin(), text.end())}, 6);
}

}  // namespace
}  // namespace gmhdr
