// Copyright 2026 The fogvl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOGVL_CONSTANTS_H_
#define FOGVL_CONSTANTS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "fogvl/field.h"

namespace fogvl {

// Public parameters pinned per version. The file form is `key=value` lines;
// `#` starts a comment.
//
//   version     parameter-set identifier, echoed into every report
//   q           device-tier share modulus (prime)
//   p, r, g     hash group: Z_p^* subgroup of prime order r generated by g
//   frac_bits   fixed-point scale = 2^frac_bits
//
// Device-tier shares live in F_q. Fog-tier shares and hash exponents live
// in F_r; a cluster sum crosses from F_q to F_r exactly once, by signed
// lift, when the fog delegates it.
struct ProtocolConstants {
  std::string version = "v1";
  std::uint64_t q = (std::uint64_t{1} << 61) - 1;
  std::uint64_t p = 9223372036854771239ULL;  // 2r + 1
  std::uint64_t r = 4611686018427385619ULL;
  std::uint64_t g = 4;
  unsigned frac_bits = 16;

  PrimeField share_field() const { return PrimeField(q); }
  HashGroup hash_group() const { return HashGroup(p, r, g); }
  FixedPointCodec device_codec() const {
    return FixedPointCodec(share_field(), frac_bits);
  }
  FixedPointCodec fog_codec() const {
    return FixedPointCodec(PrimeField(r), frac_bits);
  }

  // Throws ConfigError on any inconsistency (non-prime moduli, bad
  // generator, r not large enough to hold lifted F_q values).
  void validate() const;

  std::string to_text() const;
  static ProtocolConstants parse(std::istream& in);
  static ProtocolConstants load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

}  // namespace fogvl

#endif  // FOGVL_CONSTANTS_H_
