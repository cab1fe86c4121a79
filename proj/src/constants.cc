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

#include "fogvl/constants.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "fogvl/error.h"

namespace fogvl {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("constants: '" + key + "' is not an unsigned integer");
  }
  return out;
}

}  // namespace

void ProtocolConstants::validate() const {
  try {
    PrimeField fq(q);
    HashGroup group(p, r, g);
    // Lifted F_q values must fit the signed half-range of F_r.
    if (r <= q) throw ConfigError("constants: r must exceed q");
    FixedPointCodec codec(fq, frac_bits);
  } catch (const PolicyError& e) {
    throw ConfigError(std::string("constants: ") + e.what());
  }
}

std::string ProtocolConstants::to_text() const {
  std::ostringstream out;
  out << "version=" << version << "\n"
      << "q=" << q << "\n"
      << "p=" << p << "\n"
      << "r=" << r << "\n"
      << "g=" << g << "\n"
      << "frac_bits=" << frac_bits << "\n";
  return out.str();
}

ProtocolConstants ProtocolConstants::parse(std::istream& in) {
  ProtocolConstants c;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("constants: expected key=value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "version") {
      c.version = value;
    } else if (key == "q") {
      c.q = parse_u64(key, value);
    } else if (key == "p") {
      c.p = parse_u64(key, value);
    } else if (key == "r") {
      c.r = parse_u64(key, value);
    } else if (key == "g") {
      c.g = parse_u64(key, value);
    } else if (key == "frac_bits" || key == "scale_bits") {
      c.frac_bits = static_cast<unsigned>(parse_u64(key, value));
    } else {
      throw ConfigError("constants: unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

ProtocolConstants ProtocolConstants::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open constants file " + path.string());
  return parse(in);
}

void ProtocolConstants::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write constants file " + path.string());
  out << to_text();
}

}  // namespace fogvl
