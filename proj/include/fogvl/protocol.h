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

// Roles of one training round and the messages they exchange.
//
//   Device  local gradient -> Shamir shares to cluster peers (F_q)
//           -> sum of received shares -> its fog
//   Fog     reconstruct cluster sum c_i -> lift to F_r -> VAHSS shares to
//           every fog + tag on the bulletin -> (y_i, sigma_i) to cloud
//   Cloud   (y, sigma) = (sum y_i, prod sigma_i) broadcast to fogs
//   Fog     verify -> x = (alpha / M) y broadcast to its cluster
//   Device  theta -= x
//
// Each role is a single-threaded object; all interaction is by Message.

#ifndef FOGVL_PROTOCOL_H_
#define FOGVL_PROTOCOL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fogvl/constants.h"
#include "fogvl/field.h"
#include "fogvl/regression.h"
#include "fogvl/shamir.h"
#include "fogvl/vahss.h"

namespace fogvl {

// Wire width of one field element, group element or real.
inline constexpr std::size_t kElementBytes = 8;

enum class MessageKind {
  kDeviceShare,
  kSummedShare,
  kFogShare,
  kPartialResult,
  kAggregateResult,
  kModelUpdate,
};

std::string_view to_string(MessageKind kind);

enum class Role { kDevice, kFog, kCloud };

std::string_view to_string(Role role);

// Receiver id meaning "every entity of this role in scope": the whole
// cluster for a fog's update, every fog for the cloud's result.
inline constexpr int kBroadcast = -1;

struct Endpoint {
  Role role = Role::kDevice;
  int id = 0;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

// (y, sigma) as carried by PartialResult and AggregateResult.
struct ProofPayload {
  std::vector<FieldElement> y;
  std::vector<GroupElement> sigma;

  friend bool operator==(const ProofPayload&, const ProofPayload&) = default;
};

// The scaled update x, flattened row-major in theta's shape.
struct UpdatePayload {
  std::vector<double> x;

  friend bool operator==(const UpdatePayload&, const UpdatePayload&) = default;
};

using Payload = std::variant<ShareVector, ProofPayload, UpdatePayload>;

struct Message {
  MessageKind kind = MessageKind::kDeviceShare;
  Endpoint sender;
  Endpoint receiver;
  std::uint64_t round_id = 0;
  Payload payload;
  std::size_t byte_size = 0;  // serialized payload length

  bool is_broadcast() const { return receiver.id == kBroadcast; }
  bool is_self() const { return sender == receiver; }
  std::size_t elements() const { return byte_size / kElementBytes; }
};

// Payload encoding: fixed-width little-endian 64-bit words. Shares carry
// their values only (the abscissa and round travel in the header);
// proofs carry y then sigma; updates carry IEEE-754 doubles.
std::vector<std::uint8_t> serialize_payload(const Payload& payload);
Payload deserialize_payload(MessageKind kind,
                            std::span<const std::uint8_t> bytes,
                            FieldElement eval_point = {},
                            std::uint64_t round_id = 0);

// Checks that the payload alternative fits the kind and fills byte_size.
Message make_message(MessageKind kind, Endpoint sender, Endpoint receiver,
                     std::uint64_t round_id, Payload payload);

// Trusted setup: one PRF key per fog, derived from the master seed, plus
// the public parameters.
struct SetupBundle {
  ProtocolConstants constants;
  std::map<int, std::vector<std::uint8_t>> fog_keys;
  std::uint64_t master_seed = 0;

  static SetupBundle generate(const ProtocolConstants& constants,
                              std::size_t fogs, std::uint64_t master_seed);

  // PR_i = F_{sk_i}(i, ts) with ts = round, then balanced so the masks sum
  // to zero mod r.
  std::vector<BlindingShare> blinding_for_round(std::uint64_t round_id) const;
};

enum class Phase {
  kLocalTraining,
  kGradientComputation,
  kTaskDelegation,
  kAggregation,
  kVerification,
  kUpdate,
};

std::string_view to_string(Phase phase);

class RoundState {
 public:
  RoundState(std::uint64_t round_id, std::size_t fogs);

  std::uint64_t round_id() const { return round_id_; }
  Phase phase() const { return phase_; }
  // Throws ProtocolError unless `next` is strictly later.
  void advance(Phase next);
  // Throws ProtocolError when not in `phase`.
  void require(Phase phase) const;

  void record_participant(int cluster, int device, std::size_t samples);
  // Drops a cluster whose reconstruction failed.
  void abort_cluster(int cluster);
  const std::map<int, std::map<int, std::size_t>>& participation() const {
    return participation_;
  }
  std::size_t participant_count() const;
  std::size_t sample_total() const { return sample_total_; }

  void post_tag(ProofTag tag);
  const std::map<int, ProofTag>& bulletin() const { return bulletin_; }
  // Tags ordered by fog id; throws ProtocolError unless all fogs posted.
  std::vector<ProofTag> all_tags() const;

 private:
  std::uint64_t round_id_;
  std::size_t fogs_;
  Phase phase_ = Phase::kLocalTraining;
  std::map<int, std::map<int, std::size_t>> participation_;
  std::size_t sample_total_ = 0;
  std::map<int, ProofTag> bulletin_;
};

// Flattens a (k+1) x l matrix row-major.
std::vector<double> flatten(const Matrix& m);
Matrix unflatten(std::span<const double> v, Eigen::Index rows,
                 Eigen::Index cols);

class Device {
 public:
  Device(int id, int cluster, std::size_t index_in_cluster, Dataset data,
         ModelParams theta);

  int id() const { return id_; }
  int cluster() const { return cluster_; }
  std::size_t index_in_cluster() const { return index_; }
  FieldElement eval_point() const { return {index_ + 1}; }
  Endpoint endpoint() const { return {Role::kDevice, id_}; }
  std::size_t samples() const { return data_.samples(); }
  const Dataset& data() const { return data_; }
  const ModelParams& theta() const { return theta_; }
  std::uint64_t round() const { return round_; }

  void begin_round(std::uint64_t round_id) { round_ = round_id; }

  // Unscaled local gradient; throws DataError on an empty dataset.
  Matrix local_train(ModelKind kind) const;

  // Encodes the gradient and sends one share to every roster member
  // (roster[j] receives the share at point j + 1, self included).
  std::vector<Message> distribute(const Matrix& gradient,
                                  std::span<const int> roster,
                                  const SharingPolicy& policy,
                                  const FixedPointCodec& codec,
                                  std::uint64_t seed) const;

  // Sums the shares addressed to this device and addresses the result to
  // `fog`.
  Message sum_and_send(std::span<const Message> received,
                       const PrimeField& field, Endpoint fog) const;

  // theta -= x. Throws ProtocolError on a stale round or a wrong kind.
  void apply_update(const Message& update);

 private:
  int id_;
  int cluster_;
  std::size_t index_;
  Dataset data_;
  ModelParams theta_;
  std::uint64_t round_ = 0;
};

class Fog {
 public:
  Fog(int id, std::size_t index, std::vector<int> cluster_devices,
      SharingPolicy device_policy, SharingPolicy fog_policy);

  int id() const { return id_; }
  std::size_t index() const { return index_; }
  Endpoint endpoint() const { return {Role::kFog, id_}; }
  const std::vector<int>& cluster_devices() const { return devices_; }
  const SharingPolicy& device_policy() const { return device_policy_; }
  const SharingPolicy& fog_policy() const { return fog_policy_; }

  // c_i over F_q from the cluster's summed shares. Throws
  // InsufficientSharesError below the device threshold.
  std::vector<FieldElement> reconstruct(std::span<const Message> summed,
                                        const PrimeField& field,
                                        std::uint64_t round_id) const;

  struct Delegation {
    std::vector<Message> shares;  // one per fog, self included
    ProofTag tag;
  };

  // Lifts c_i into F_r, shares it across fogs and tags it.
  Delegation delegate(std::span<const FieldElement> cluster_sum,
                      const SetupBundle& setup, std::uint64_t round_id,
                      std::uint64_t seed) const;

  // (y_i, sigma_i) for the cloud from the column of fog shares addressed
  // to this fog. Throws ProtocolError unless every fog's share is present.
  Message partial(std::span<const Message> column, const SetupBundle& setup,
                  std::uint64_t round_id) const;

  // Checks the cloud's (y, sigma) against the bulletin. On success returns
  // the update x = (alpha / M) y broadcast to the cluster; on failure
  // returns nothing.
  std::optional<Message> verify_and_scale(const Message& aggregate,
                                          const RoundState& state,
                                          const SetupBundle& setup,
                                          double alpha, Eigen::Index rows,
                                          Eigen::Index cols) const;

 private:
  int id_;
  std::size_t index_;
  std::vector<int> devices_;
  SharingPolicy device_policy_;
  SharingPolicy fog_policy_;
};

class Cloud {
 public:
  Endpoint endpoint() const { return {Role::kCloud, 0}; }

  // Throws ProtocolError unless all `fogs` partial results are present.
  Message aggregate(std::span<const Message> partials, std::size_t fogs,
                    const SetupBundle& setup, std::uint64_t round_id) const;
};

}  // namespace fogvl

#endif  // FOGVL_PROTOCOL_H_
