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

#include "fogvl/protocol.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <random>
#include <string>
#include <utility>

#include "fogvl/error.h"

namespace fogvl {

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::kDeviceShare: return "device_share";
    case MessageKind::kSummedShare: return "summed_share";
    case MessageKind::kFogShare: return "fog_share";
    case MessageKind::kPartialResult: return "partial_result";
    case MessageKind::kAggregateResult: return "aggregate_result";
    case MessageKind::kModelUpdate: return "model_update";
  }
  return "unknown";
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kDevice: return "device";
    case Role::kFog: return "fog";
    case Role::kCloud: return "cloud";
  }
  return "unknown";
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kLocalTraining: return "local_training";
    case Phase::kGradientComputation: return "gradient_computation";
    case Phase::kTaskDelegation: return "task_delegation";
    case Phase::kAggregation: return "aggregation";
    case Phase::kVerification: return "verification";
    case Phase::kUpdate: return "update";
  }
  return "unknown";
}

namespace {

void put_word(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_word(std::span<const std::uint8_t> bytes, std::size_t i) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) {
    v |= static_cast<std::uint64_t>(bytes[i * 8 + static_cast<std::size_t>(b)])
         << (8 * b);
  }
  return v;
}

std::size_t payload_index(MessageKind kind) {
  switch (kind) {
    case MessageKind::kDeviceShare:
    case MessageKind::kSummedShare:
    case MessageKind::kFogShare:
      return 0;
    case MessageKind::kPartialResult:
    case MessageKind::kAggregateResult:
      return 1;
    case MessageKind::kModelUpdate:
      return 2;
  }
  throw ProtocolError("unknown message kind");
}

void require_kind(const Message& msg, MessageKind kind) {
  if (msg.kind != kind) {
    throw ProtocolError("expected " + std::string(to_string(kind)) +
                        ", got " + std::string(to_string(msg.kind)));
  }
}

void require_round(const Message& msg, std::uint64_t round_id) {
  if (msg.round_id != round_id) {
    throw ProtocolError("message from round " + std::to_string(msg.round_id) +
                        " in round " + std::to_string(round_id));
  }
}

}  // namespace

std::vector<std::uint8_t> serialize_payload(const Payload& payload) {
  std::vector<std::uint8_t> out;
  if (const auto* s = std::get_if<ShareVector>(&payload)) {
    out.reserve(s->values.size() * kElementBytes);
    for (FieldElement v : s->values) put_word(out, v.value);
  } else if (const auto* p = std::get_if<ProofPayload>(&payload)) {
    if (p->y.size() != p->sigma.size()) {
      throw MismatchError("proof payload with unequal y and sigma lengths");
    }
    out.reserve(2 * p->y.size() * kElementBytes);
    for (FieldElement v : p->y) put_word(out, v.value);
    for (GroupElement v : p->sigma) put_word(out, v.value);
  } else {
    const auto& u = std::get<UpdatePayload>(payload);
    out.reserve(u.x.size() * kElementBytes);
    for (double v : u.x) put_word(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

Payload deserialize_payload(MessageKind kind,
                            std::span<const std::uint8_t> bytes,
                            FieldElement eval_point, std::uint64_t round_id) {
  if (bytes.size() % kElementBytes != 0) {
    throw ProtocolError("payload length is not a multiple of the word size");
  }
  const std::size_t words = bytes.size() / kElementBytes;
  switch (payload_index(kind)) {
    case 0: {
      ShareVector s{eval_point, std::vector<FieldElement>(words), round_id};
      for (std::size_t i = 0; i < words; ++i) s.values[i] = {get_word(bytes, i)};
      return s;
    }
    case 1: {
      if (words % 2 != 0) throw ProtocolError("odd proof payload length");
      const std::size_t d = words / 2;
      ProofPayload p{std::vector<FieldElement>(d), std::vector<GroupElement>(d)};
      for (std::size_t i = 0; i < d; ++i) {
        p.y[i] = {get_word(bytes, i)};
        p.sigma[i] = {get_word(bytes, d + i)};
      }
      return p;
    }
    default: {
      UpdatePayload u{std::vector<double>(words)};
      for (std::size_t i = 0; i < words; ++i) {
        u.x[i] = std::bit_cast<double>(get_word(bytes, i));
      }
      return u;
    }
  }
}

Message make_message(MessageKind kind, Endpoint sender, Endpoint receiver,
                     std::uint64_t round_id, Payload payload) {
  if (payload.index() != payload_index(kind)) {
    throw ProtocolError("payload does not match message kind " +
                        std::string(to_string(kind)));
  }
  Message msg{kind, sender, receiver, round_id, std::move(payload), 0};
  msg.byte_size = serialize_payload(msg.payload).size();
  return msg;
}

SetupBundle SetupBundle::generate(const ProtocolConstants& constants,
                                  std::size_t fogs,
                                  std::uint64_t master_seed) {
  constants.validate();
  if (fogs == 0) throw ConfigError("at least one fog node is required");
  SetupBundle bundle;
  bundle.constants = constants;
  bundle.master_seed = master_seed;
  std::mt19937_64 rng(master_seed);
  for (std::size_t i = 0; i < fogs; ++i) {
    std::vector<std::uint8_t> key(kPrfKeyBytes);
    for (std::size_t b = 0; b < kPrfKeyBytes; b += 8) {
      const std::uint64_t w = rng();
      for (std::size_t k = 0; k < 8; ++k) {
        key[b + k] = static_cast<std::uint8_t>(w >> (8 * k));
      }
    }
    bundle.fog_keys.emplace(static_cast<int>(i), std::move(key));
  }
  return bundle;
}

std::vector<BlindingShare> SetupBundle::blinding_for_round(
    std::uint64_t round_id) const {
  const PrimeField exponents(constants.r);
  std::vector<BlindingShare> prs;
  prs.reserve(fog_keys.size());
  for (const auto& [fog, key] : fog_keys) {
    prs.push_back({prf_eval(key, fog, round_id, exponents), fog, round_id});
  }
  return balance_blinding(exponents, std::move(prs));
}

RoundState::RoundState(std::uint64_t round_id, std::size_t fogs)
    : round_id_(round_id), fogs_(fogs) {}

void RoundState::advance(Phase next) {
  if (next <= phase_) {
    throw ProtocolError("phase " + std::string(to_string(next)) +
                        " cannot follow " + std::string(to_string(phase_)));
  }
  phase_ = next;
}

void RoundState::require(Phase phase) const {
  if (phase_ != phase) {
    throw ProtocolError("operation belongs to phase " +
                        std::string(to_string(phase)) + ", round is in " +
                        std::string(to_string(phase_)));
  }
}

void RoundState::record_participant(int cluster, int device,
                                    std::size_t samples) {
  auto [it, inserted] = participation_[cluster].emplace(device, samples);
  if (!inserted) {
    throw ProtocolError("device " + std::to_string(device) +
                        " recorded twice");
  }
  sample_total_ += samples;
}

void RoundState::abort_cluster(int cluster) {
  auto it = participation_.find(cluster);
  if (it == participation_.end()) return;
  for (const auto& [device, samples] : it->second) sample_total_ -= samples;
  participation_.erase(it);
}

std::size_t RoundState::participant_count() const {
  std::size_t n = 0;
  for (const auto& [cluster, devices] : participation_) n += devices.size();
  return n;
}

void RoundState::post_tag(ProofTag tag) {
  if (tag.round_id != round_id_) {
    throw ProtocolError("tag for round " + std::to_string(tag.round_id) +
                        " posted in round " + std::to_string(round_id_));
  }
  if (!bulletin_.emplace(tag.fog_id, tag).second) {
    throw ProtocolError("fog " + std::to_string(tag.fog_id) +
                        " posted two tags");
  }
}

std::vector<ProofTag> RoundState::all_tags() const {
  if (bulletin_.size() != fogs_) {
    throw ProtocolError("bulletin holds " + std::to_string(bulletin_.size()) +
                        " of " + std::to_string(fogs_) + " tags");
  }
  std::vector<ProofTag> out;
  out.reserve(fogs_);
  for (const auto& [fog, tag] : bulletin_) out.push_back(tag);
  return out;
}

std::vector<double> flatten(const Matrix& m) {
  return std::vector<double>(m.data(), m.data() + m.size());
}

Matrix unflatten(std::span<const double> v, Eigen::Index rows,
                 Eigen::Index cols) {
  if (static_cast<Eigen::Index>(v.size()) != rows * cols) {
    throw ShapeError("flat vector of " + std::to_string(v.size()) +
                     " does not fit " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  Matrix m(rows, cols);
  std::copy(v.begin(), v.end(), m.data());
  return m;
}

// ---------------------------------------------------------------- Device

Device::Device(int id, int cluster, std::size_t index_in_cluster, Dataset data,
               ModelParams theta)
    : id_(id),
      cluster_(cluster),
      index_(index_in_cluster),
      data_(std::move(data)),
      theta_(std::move(theta)) {}

Matrix Device::local_train(ModelKind kind) const {
  if (data_.empty()) {
    throw DataError("device " + std::to_string(id_) + " holds no samples");
  }
  return local_gradient(theta_, data_, kind);
}

std::vector<Message> Device::distribute(const Matrix& gradient,
                                        std::span<const int> roster,
                                        const SharingPolicy& policy,
                                        const FixedPointCodec& codec,
                                        std::uint64_t seed) const {
  if (roster.size() != policy.n) {
    throw PolicyError("roster of " + std::to_string(roster.size()) +
                      " for a sharing policy over " + std::to_string(policy.n));
  }
  const std::vector<double> flat = flatten(gradient);
  const std::vector<FieldElement> secret = codec.encode(flat);
  const PrimeField& field = codec.field();
  std::vector<ShareVector> shares =
      tss_share(field, secret, policy, default_points(field, policy.n), seed,
                round_);
  std::vector<Message> out;
  out.reserve(shares.size());
  for (std::size_t j = 0; j < shares.size(); ++j) {
    out.push_back(make_message(MessageKind::kDeviceShare, endpoint(),
                               {Role::kDevice, roster[j]}, round_,
                               std::move(shares[j])));
  }
  return out;
}

Message Device::sum_and_send(std::span<const Message> received,
                             const PrimeField& field, Endpoint fog) const {
  if (received.empty()) throw ProtocolError("no shares to sum");
  std::vector<ShareVector> batch;
  batch.reserve(received.size());
  for (const Message& msg : received) {
    require_kind(msg, MessageKind::kDeviceShare);
    require_round(msg, round_);
    if (!(msg.receiver == endpoint())) {
      throw ProtocolError("share addressed to another device");
    }
    const auto& share = std::get<ShareVector>(msg.payload);
    if (share.eval_point != eval_point()) {
      throw MismatchError("share evaluated at another device's point");
    }
    batch.push_back(share);
  }
  return make_message(MessageKind::kSummedShare, endpoint(), fog, round_,
                      sum_shares(field, batch));
}

void Device::apply_update(const Message& update) {
  require_kind(update, MessageKind::kModelUpdate);
  if (update.round_id != round_) {
    throw ProtocolError("stale update for round " +
                        std::to_string(update.round_id) + ", device is in " +
                        std::to_string(round_));
  }
  const auto& x = std::get<UpdatePayload>(update.payload).x;
  theta_.theta -= unflatten(x, theta_.theta.rows(), theta_.theta.cols());
}

// ------------------------------------------------------------------- Fog

Fog::Fog(int id, std::size_t index, std::vector<int> cluster_devices,
         SharingPolicy device_policy, SharingPolicy fog_policy)
    : id_(id),
      index_(index),
      devices_(std::move(cluster_devices)),
      device_policy_(device_policy),
      fog_policy_(fog_policy) {
  device_policy_.validate();
  fog_policy_.validate();
  if (devices_.size() != device_policy_.n) {
    throw PolicyError("cluster size differs from the device sharing policy");
  }
}

std::vector<FieldElement> Fog::reconstruct(std::span<const Message> summed,
                                           const PrimeField& field,
                                           std::uint64_t round_id) const {
  std::vector<ShareVector> shares;
  shares.reserve(summed.size());
  for (const Message& msg : summed) {
    require_kind(msg, MessageKind::kSummedShare);
    require_round(msg, round_id);
    if (!(msg.receiver == endpoint())) {
      throw ProtocolError("summed share addressed to another fog");
    }
    if (msg.sender.role != Role::kDevice ||
        std::find(devices_.begin(), devices_.end(), msg.sender.id) ==
            devices_.end()) {
      throw ProtocolError("summed share from outside the cluster");
    }
    shares.push_back(std::get<ShareVector>(msg.payload));
  }
  return tss_reconstruct(field, shares, device_policy_);
}

Fog::Delegation Fog::delegate(std::span<const FieldElement> cluster_sum,
                              const SetupBundle& setup,
                              std::uint64_t round_id,
                              std::uint64_t seed) const {
  const PrimeField q = setup.constants.share_field();
  const PrimeField r(setup.constants.r);
  const HashGroup group = setup.constants.hash_group();
  std::vector<FieldElement> lifted(cluster_sum.size());
  for (std::size_t w = 0; w < lifted.size(); ++w) {
    lifted[w] = lift_signed(q, r, cluster_sum[w]);
  }
  const std::vector<BlindingShare> prs = setup.blinding_for_round(round_id);
  if (index_ >= prs.size()) throw ProtocolError("fog index without a key");
  VahssSharing sharing =
      vahss_share_secret(r, group, lifted, prs[index_], fog_policy_.n,
                         fog_policy_.t, seed, round_id);
  Delegation out;
  out.tag = std::move(sharing.tag);
  out.tag.fog_id = id_;
  out.shares.reserve(sharing.shares.size());
  for (std::size_t j = 0; j < sharing.shares.size(); ++j) {
    out.shares.push_back(make_message(MessageKind::kFogShare, endpoint(),
                                      {Role::kFog, static_cast<int>(j)},
                                      round_id, std::move(sharing.shares[j])));
  }
  return out;
}

Message Fog::partial(std::span<const Message> column, const SetupBundle& setup,
                     std::uint64_t round_id) const {
  if (column.size() != fog_policy_.n) {
    throw ProtocolError("fog " + std::to_string(id_) + " holds " +
                        std::to_string(column.size()) + " of " +
                        std::to_string(fog_policy_.n) + " fog shares");
  }
  const PrimeField r(setup.constants.r);
  std::vector<ShareVector> shares;
  shares.reserve(column.size());
  for (const Message& msg : column) {
    require_kind(msg, MessageKind::kFogShare);
    require_round(msg, round_id);
    if (!(msg.receiver == endpoint())) {
      throw ProtocolError("fog share addressed to another fog");
    }
    shares.push_back(std::get<ShareVector>(msg.payload));
  }
  std::vector<FieldElement> y =
      vahss_partial_eval(r, index_, default_points(r, fog_policy_.n), shares);
  PartialProof proof =
      vahss_partial_proof(setup.constants.hash_group(), y, id_);
  return make_message(MessageKind::kPartialResult, endpoint(),
                      {Role::kCloud, 0}, round_id,
                      ProofPayload{std::move(y), std::move(proof.sigma)});
}

std::optional<Message> Fog::verify_and_scale(const Message& aggregate,
                                             const RoundState& state,
                                             const SetupBundle& setup,
                                             double alpha, Eigen::Index rows,
                                             Eigen::Index cols) const {
  require_kind(aggregate, MessageKind::kAggregateResult);
  require_round(aggregate, state.round_id());
  const auto& proof = std::get<ProofPayload>(aggregate.payload);
  const std::vector<ProofTag> tags = state.all_tags();
  if (static_cast<Eigen::Index>(proof.y.size()) != rows * cols) return {};
  if (!vahss_verify(setup.constants.hash_group(), tags, proof.sigma, proof.y)) {
    return {};
  }
  const std::vector<double> decoded = setup.constants.fog_codec().decode(proof.y);
  UpdatePayload update{std::vector<double>(decoded.size(), 0.0)};
  if (state.sample_total() > 0) {
    const double scale = alpha / static_cast<double>(state.sample_total());
    for (std::size_t w = 0; w < decoded.size(); ++w) {
      update.x[w] = scale * decoded[w];
    }
  }
  return make_message(MessageKind::kModelUpdate, endpoint(),
                      {Role::kDevice, kBroadcast}, state.round_id(),
                      std::move(update));
}

// ----------------------------------------------------------------- Cloud

Message Cloud::aggregate(std::span<const Message> partials, std::size_t fogs,
                         const SetupBundle& setup,
                         std::uint64_t round_id) const {
  if (partials.size() != fogs) {
    throw ProtocolError("cloud holds " + std::to_string(partials.size()) +
                        " of " + std::to_string(fogs) + " partial results");
  }
  const PrimeField r(setup.constants.r);
  const HashGroup group = setup.constants.hash_group();
  std::vector<std::vector<FieldElement>> ys;
  std::vector<PartialProof> sigmas;
  std::vector<int> seen;
  for (const Message& msg : partials) {
    require_kind(msg, MessageKind::kPartialResult);
    require_round(msg, round_id);
    if (std::find(seen.begin(), seen.end(), msg.sender.id) != seen.end()) {
      throw ProtocolError("two partial results from fog " +
                          std::to_string(msg.sender.id));
    }
    seen.push_back(msg.sender.id);
    const auto& p = std::get<ProofPayload>(msg.payload);
    ys.push_back(p.y);
    sigmas.push_back({p.sigma, msg.sender.id});
  }
  return make_message(MessageKind::kAggregateResult, endpoint(),
                      {Role::kFog, kBroadcast}, round_id,
                      ProofPayload{vahss_final_eval(r, ys),
                                   vahss_final_proof(group, sigmas)});
}

}  // namespace fogvl
