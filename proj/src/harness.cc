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

#include "fogvl/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "fogvl/error.h"
#include "fogvl/kernels.h"

namespace fogvl {

namespace {

constexpr std::uint64_t kSetupTag = 0x5e7;
constexpr std::uint64_t kDeviceTag = 0xde5;
constexpr std::uint64_t kFogTag = 0xf06;
constexpr std::uint64_t kAdversaryTag = 0xad5;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t round, std::uint64_t id,
                  std::uint64_t tag) {
  return splitmix(splitmix(splitmix(splitmix(seed) ^ round) ^ id) ^ tag);
}

}  // namespace

std::string_view to_string(AdversaryMode mode) {
  switch (mode) {
    case AdversaryMode::kNone: return "none";
    case AdversaryMode::kForgeY: return "forge_y";
    case AdversaryMode::kForgeSigma: return "forge_sigma";
    case AdversaryMode::kForgeBoth: return "forge_both";
    case AdversaryMode::kTargetedDelta: return "targeted_delta";
  }
  return "unknown";
}

AdversaryMode parse_adversary(std::string_view s) {
  for (AdversaryMode m :
       {AdversaryMode::kNone, AdversaryMode::kForgeY, AdversaryMode::kForgeSigma,
        AdversaryMode::kForgeBoth, AdversaryMode::kTargetedDelta}) {
    if (s == to_string(m)) return m;
  }
  throw ConfigError("unknown adversary mode '" + std::string(s) + "'");
}

std::string_view to_string(DropStage stage) {
  return stage == DropStage::kPreDistribution ? "pre" : "post";
}

std::vector<DropoutEntry> DropoutSchedule::for_round(
    std::uint64_t round_id) const {
  std::vector<DropoutEntry> out;
  for (const DropoutEntry& e : entries) {
    if (e.round_id == round_id) out.push_back(e);
  }
  return out;
}

DropoutSchedule DropoutSchedule::parse(std::istream& in) {
  DropoutSchedule schedule;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string stage;
    long long round = 0;
    long long device = 0;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!(fields >> round >> device >> stage) || round < 1 || device < 0) {
      throw ConfigError("dropout schedule line " + std::to_string(lineno) +
                        ": expected '<round> <device> pre|post'");
    }
    DropoutEntry e{static_cast<std::uint64_t>(round), static_cast<int>(device),
                   DropStage::kPostDistribution};
    if (stage == "pre" || stage == "pre_distribution") {
      e.stage = DropStage::kPreDistribution;
    } else if (stage != "post" && stage != "post_distribution") {
      throw ConfigError("dropout schedule line " + std::to_string(lineno) +
                        ": unknown stage '" + stage + "'");
    }
    schedule.entries.push_back(e);
  }
  return schedule;
}

DropoutSchedule DropoutSchedule::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dropout schedule " + path.string());
  return parse(in);
}

std::size_t WorldConfig::per_cluster() const {
  return fogs == 0 ? 0 : devices / fogs;
}

SharingPolicy WorldConfig::device_policy() const {
  const std::size_t n = per_cluster();
  return {n, threshold == 0 ? n / 2 + 1 : threshold};
}

SharingPolicy WorldConfig::fog_policy() const {
  return {fogs, fog_threshold == 0 ? fogs / 2 + 1 : fog_threshold};
}

void WorldConfig::validate() const {
  constants.validate();
  hp.validate();
  if (fogs == 0) throw ConfigError("at least one fog is required");
  if (devices == 0 || devices % fogs != 0) {
    throw ConfigError("devices (" + std::to_string(devices) +
                      ") must be a positive multiple of fogs (" +
                      std::to_string(fogs) + ")");
  }
  const SharingPolicy dp = device_policy();
  if (dp.t < 1 || dp.t > dp.n) {
    throw ConfigError("threshold " + std::to_string(dp.t) +
                      " outside [1, " + std::to_string(dp.n) + "]");
  }
  const SharingPolicy fp = fog_policy();
  if (fp.t < 1 || fp.t > fp.n) {
    throw ConfigError("fog threshold " + std::to_string(fp.t) +
                      " outside [1, " + std::to_string(fp.n) + "]");
  }
  if (!partition_fractions.empty() && partition_fractions.size() != devices) {
    throw ConfigError("partition fractions must list one entry per device");
  }
  std::map<std::pair<std::uint64_t, int>, std::size_t> post_drops;
  std::set<std::pair<std::uint64_t, int>> seen;
  for (const DropoutEntry& e : dropout.entries) {
    if (e.device_id < 0 || static_cast<std::size_t>(e.device_id) >= devices) {
      throw ConfigError("dropout names unknown device " +
                        std::to_string(e.device_id));
    }
    if (!seen.emplace(e.round_id, e.device_id).second) {
      throw ConfigError("device " + std::to_string(e.device_id) +
                        " drops twice in round " + std::to_string(e.round_id));
    }
    if (e.stage == DropStage::kPostDistribution) {
      const int cluster = e.device_id / static_cast<int>(dp.n);
      if (++post_drops[{e.round_id, cluster}] > dp.n - dp.t) {
        throw ConfigError("round " + std::to_string(e.round_id) +
                          " drops more than n - t devices of cluster " +
                          std::to_string(cluster) + " after distribution");
      }
    }
  }
}

std::string WorldConfig::to_line() const {
  std::ostringstream out;
  out.precision(10);
  const SharingPolicy dp = device_policy();
  const SharingPolicy fp = fog_policy();
  out << "record=config kind=" << to_string(kind) << " N=" << devices
      << " m=" << fogs << " n=" << dp.n << " t=" << dp.t
      << " fog_t=" << fp.t << " alpha=" << hp.alpha
      << " max_iters=" << hp.max_iters << " tol=" << hp.tol
      << " scale_bits=" << constants.frac_bits << " q=" << constants.q
      << " p=" << constants.p << " r=" << constants.r << " g=" << constants.g
      << " constants=" << constants.version << " seed=" << seed
      << " adversary=" << to_string(adversary) << " partition="
      << (partition_fractions.empty()
              ? (partition == PartitionStrategy::kContiguous ? "contiguous"
                                                             : "shuffled")
              : "weighted")
      << " dropout_entries=" << dropout.entries.size()
      << " retries=" << retries << " parallel=" << (parallel ? 1 : 0);
  return out.str();
}

std::uint64_t World::fingerprint() const {
  std::uint64_t h = fnv1a(cfg.to_line());
  for (const auto& [fog, key] : setup.fog_keys) {
    h = fnv1a(std::string_view(reinterpret_cast<const char*>(key.data()),
                               key.size()),
              h);
  }
  for (const Device& d : devices) {
    h = fnv1a(std::to_string(d.id()) + ":" + std::to_string(d.cluster()), h);
    h ^= theta_hash(d.data().features);
    h = fnv1a("|", h) ^ theta_hash(d.data().labels);
    h = fnv1a("|", h) ^ theta_hash(d.theta().theta);
  }
  return h;
}

World build_world(const WorldConfig& cfg, const Dataset& train) {
  cfg.validate();
  const std::vector<Dataset> parts =
      cfg.partition_fractions.empty()
          ? partition(train, cfg.devices, cfg.partition,
                      mix(cfg.seed, 0, 0, kSetupTag))
          : partition_weighted(train, cfg.partition_fractions);
  World world;
  world.cfg = cfg;
  world.setup = SetupBundle::generate(cfg.constants, cfg.fogs,
                                      mix(cfg.seed, 0, 1, kSetupTag));
  const ModelParams theta0 =
      ModelParams::zeros(train.feature_count(), train.outputs());
  world.theta_rows = theta0.theta.rows();
  world.theta_cols = theta0.theta.cols();
  const std::size_t n = cfg.per_cluster();
  world.devices.reserve(cfg.devices);
  for (std::size_t d = 0; d < cfg.devices; ++d) {
    world.devices.emplace_back(static_cast<int>(d), static_cast<int>(d / n),
                               d % n, parts[d], theta0);
  }
  for (std::size_t i = 0; i < cfg.fogs; ++i) {
    std::vector<int> members(n);
    for (std::size_t j = 0; j < n; ++j) {
      members[j] = static_cast<int>(i * n + j);
    }
    world.fogs.emplace_back(static_cast<int>(i), i, std::move(members),
                            cfg.device_policy(), cfg.fog_policy());
  }
  return world;
}

Message adversary_forge(AdversaryMode mode, const Message& aggregate,
                        const ProtocolConstants& constants,
                        std::mt19937_64& rng,
                        const std::vector<double>& delta) {
  if (aggregate.kind != MessageKind::kAggregateResult) {
    throw ProtocolError("the adversary only forges aggregate results");
  }
  Message out = aggregate;
  auto& proof = std::get<ProofPayload>(out.payload);
  const std::size_t d = proof.y.size();
  if (d == 0 || proof.sigma.size() != d) {
    throw ProtocolError("malformed aggregate");
  }
  const PrimeField fr(constants.r);
  const HashGroup group = constants.hash_group();
  std::uniform_int_distribution<std::size_t> coord(0, d - 1);
  std::uniform_int_distribution<std::uint64_t> nonzero(1, constants.r - 1);
  const auto perturb_y = [&] {
    const std::size_t w = coord(rng);
    proof.y[w] = fr.add(proof.y[w], {nonzero(rng)});
  };
  const auto perturb_sigma = [&] {
    const std::size_t w = coord(rng);
    proof.sigma[w] = group.mul(proof.sigma[w], group.hash(nonzero(rng)));
  };
  switch (mode) {
    case AdversaryMode::kNone:
      break;
    case AdversaryMode::kForgeY:
      perturb_y();
      break;
    case AdversaryMode::kForgeSigma:
      perturb_sigma();
      break;
    case AdversaryMode::kForgeBoth:
      perturb_y();
      perturb_sigma();
      break;
    case AdversaryMode::kTargetedDelta: {
      if (delta.size() > d) {
        throw PolicyError("perturbation longer than the aggregate");
      }
      std::vector<double> full(d, 0.0);
      if (delta.empty()) {
        full[0] = 1.0;
      } else {
        std::copy(delta.begin(), delta.end(), full.begin());
      }
      const std::vector<FieldElement> e = constants.fog_codec().encode(full);
      if (std::all_of(e.begin(), e.end(),
                      [](FieldElement v) { return v.value == 0; })) {
        throw PolicyError("targeted perturbation must be nonzero");
      }
      for (std::size_t w = 0; w < d; ++w) {
        proof.y[w] = fr.add(proof.y[w], e[w]);
        proof.sigma[w] = group.mul(proof.sigma[w], group.hash(e[w].value));
      }
      break;
    }
  }
  return out;
}

RoundReport run_round(World& world) {
  const WorldConfig& cfg = world.cfg;
  const std::uint64_t round = world.next_round++;
  const std::size_t nd = world.devices.size();
  const std::size_t m = world.fogs.size();
  const PrimeField q = cfg.constants.share_field();
  const FixedPointCodec codec = cfg.constants.device_codec();
  const SharingPolicy dp = cfg.device_policy();

  RoundState state(round, m);
  RoundReport report;
  report.round_id = round;
  report.device_elements.assign(nd, 0);
  report.fog_elements.assign(m, 0);
  report.cluster_sums.assign(m, {});

  const auto count = [&](const Message& msg) {
    if (msg.is_self()) return;
    const std::size_t e = msg.elements();
    switch (msg.sender.role) {
      case Role::kDevice:
        report.device_elements[static_cast<std::size_t>(msg.sender.id)] += e;
        report.device_elements_total += e;
        break;
      case Role::kFog:
        report.fog_elements[static_cast<std::size_t>(msg.sender.id)] += e;
        report.fog_elements_total += e;
        break;
      case Role::kCloud:
        report.cloud_elements += e;
        break;
    }
  };
  const auto consume = [&](Role role, const Message& msg) {
    report.consumed[role].insert(msg.kind);
  };

  std::vector<bool> pre(nd, false), post(nd, false);
  for (const DropoutEntry& e : cfg.dropout.for_round(round)) {
    const auto id = static_cast<std::size_t>(e.device_id);
    if (e.stage == DropStage::kPreDistribution) {
      pre[id] = true;
      report.dropped_pre.push_back(e.device_id);
    } else {
      post[id] = true;
      report.dropped_post.push_back(e.device_id);
    }
  }
  for (Device& d : world.devices) d.begin_round(round);

  // Local training and share generation, one slot per device so that the
  // optional parallel driver delivers in device order.
  state.require(Phase::kLocalTraining);
  std::vector<std::vector<Message>> outbox(nd);
  std::vector<std::exception_ptr> failures(nd);
  const auto work = [&](std::size_t id) {
    if (pre[id]) return;
    try {
      const Device& dev = world.devices[id];
      const Matrix grad = dev.local_train(cfg.kind);
      const Fog& fog = world.fogs[static_cast<std::size_t>(dev.cluster())];
      outbox[id] = dev.distribute(grad, fog.cluster_devices(), dp, codec,
                                  mix(cfg.seed, round, id, kDeviceTag));
    } catch (...) {
      failures[id] = std::current_exception();
    }
  };
  if (cfg.parallel) {
    const auto count_nd = static_cast<std::ptrdiff_t>(nd);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t id = 0; id < count_nd; ++id) {
      work(static_cast<std::size_t>(id));
    }
  } else {
    for (std::size_t id = 0; id < nd; ++id) work(id);
  }
  for (const std::exception_ptr& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  state.advance(Phase::kGradientComputation);
  std::vector<std::vector<Message>> inbox(nd);
  for (std::size_t id = 0; id < nd; ++id) {
    if (pre[id]) continue;
    const Device& dev = world.devices[id];
    state.record_participant(dev.cluster(), dev.id(), dev.samples());
    for (Message& msg : outbox[id]) {
      count(msg);
      inbox[static_cast<std::size_t>(msg.receiver.id)].push_back(std::move(msg));
    }
  }
  std::vector<std::vector<Message>> fog_inbox(m);
  for (std::size_t id = 0; id < nd; ++id) {
    if (pre[id] || post[id]) continue;
    const Device& dev = world.devices[id];
    for (const Message& msg : inbox[id]) consume(Role::kDevice, msg);
    const Fog& fog = world.fogs[static_cast<std::size_t>(dev.cluster())];
    Message summed = dev.sum_and_send(inbox[id], q, fog.endpoint());
    count(summed);
    fog_inbox[fog.index()].push_back(std::move(summed));
  }

  const std::size_t d =
      static_cast<std::size_t>(world.theta_rows * world.theta_cols);
  for (const Fog& fog : world.fogs) {
    const std::size_t i = fog.index();
    for (const Message& msg : fog_inbox[i]) consume(Role::kFog, msg);
    if (fog_inbox[i].size() < dp.t) {
      report.aborted_clusters.push_back(fog.id());
      state.abort_cluster(fog.id());
      report.cluster_sums[i].assign(d, q.zero());
      continue;
    }
    report.cluster_sums[i] = fog.reconstruct(fog_inbox[i], q, round);
  }
  for (const auto& [cluster, members] : state.participation()) {
    for (const auto& [device, samples] : members) {
      report.participants.push_back(device);
    }
  }
  report.sample_total = state.sample_total();

  state.advance(Phase::kTaskDelegation);
  std::vector<std::vector<Message>> columns(m);
  for (const Fog& fog : world.fogs) {
    Fog::Delegation del =
        fog.delegate(report.cluster_sums[fog.index()], world.setup, round,
                     mix(cfg.seed, round, fog.index(), kFogTag));
    report.bulletin_elements += del.tag.tau.size();
    state.post_tag(std::move(del.tag));
    for (Message& msg : del.shares) {
      count(msg);
      columns[static_cast<std::size_t>(msg.receiver.id)].push_back(
          std::move(msg));
    }
  }
  std::vector<Message> partials;
  partials.reserve(m);
  for (const Fog& fog : world.fogs) {
    for (const Message& msg : columns[fog.index()]) consume(Role::kFog, msg);
    partials.push_back(fog.partial(columns[fog.index()], world.setup, round));
    count(partials.back());
  }

  state.advance(Phase::kAggregation);
  for (const Message& msg : partials) consume(Role::kCloud, msg);
  Message aggregate = world.cloud.aggregate(partials, m, world.setup, round);
  if (cfg.adversary != AdversaryMode::kNone) {
    std::mt19937_64 rng(mix(cfg.seed, round, 0, kAdversaryTag));
    aggregate = adversary_forge(cfg.adversary, aggregate, cfg.constants, rng,
                                cfg.targeted_delta);
  }
  count(aggregate);
  report.aggregate = cfg.constants.fog_codec().decode(
      std::get<ProofPayload>(aggregate.payload).y);

  state.advance(Phase::kVerification);
  std::vector<std::optional<Message>> updates;
  updates.reserve(m);
  report.verified = true;
  for (const Fog& fog : world.fogs) {
    consume(Role::kFog, aggregate);
    updates.push_back(fog.verify_and_scale(aggregate, state, world.setup,
                                           cfg.hp.alpha, world.theta_rows,
                                           world.theta_cols));
    report.verified = report.verified && updates.back().has_value();
  }

  state.advance(Phase::kUpdate);
  if (report.verified) {
    for (const Fog& fog : world.fogs) {
      const Message& upd = *updates[fog.index()];
      count(upd);
      for (int id : fog.cluster_devices()) {
        consume(Role::kDevice, upd);
        world.devices[static_cast<std::size_t>(id)].apply_update(upd);
      }
    }
    report.update = std::get<UpdatePayload>(updates.front()->payload).x;
  }
  report.theta_hash = theta_hash(world.theta().theta);
  return report;
}

namespace {

// Rows of every participating device, in device order.
Dataset union_of(const World& world, const std::vector<int>& participants) {
  std::size_t rows = 0;
  for (int id : participants) {
    rows += world.devices[static_cast<std::size_t>(id)].samples();
  }
  const Dataset& first = world.devices.front().data();
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(rows), first.features.cols());
  out.labels.resize(static_cast<Eigen::Index>(rows), first.labels.cols());
  Eigen::Index at = 0;
  std::vector<int> sorted = participants;
  std::sort(sorted.begin(), sorted.end());
  for (int id : sorted) {
    const Dataset& ds = world.devices[static_cast<std::size_t>(id)].data();
    const auto k = static_cast<Eigen::Index>(ds.samples());
    out.features.middleRows(at, k) = ds.features;
    out.labels.middleRows(at, k) = ds.labels;
    at += k;
  }
  return out;
}

double max_abs_diff(const std::vector<double>& a, const Matrix& b) {
  double gap = 0.0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    gap = std::max(gap, std::abs(a[w] - b.data()[w]));
  }
  return gap;
}

}  // namespace

TrainingReport run_training(const WorldConfig& cfg, const Dataset& train,
                            const TrainingOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  World world = build_world(cfg, train);
  TrainingReport report;
  report.config_line = cfg.to_line();
  report.dataset_line = options.dataset_line;
  report.status = "max_iters";

  std::vector<int> everyone(world.devices.size());
  for (std::size_t i = 0; i < everyone.size(); ++i) {
    everyone[i] = static_cast<int>(i);
  }
  const Dataset full = union_of(world, everyone);
  OracleComparison& oracle = report.oracle;
  oracle.ran = options.run_oracle;
  oracle.round_tolerance = 2.0 * static_cast<double>(world.theta_rows *
                                                     world.theta_cols) /
                           cfg.constants.device_codec().scale();

  std::size_t failures = 0;
  const bool frozen = cfg.hp.alpha == 0.0;
  for (std::size_t it = 0; !frozen && it < cfg.hp.max_iters; ++it) {
    const ModelParams before = world.theta();
    RoundReport round = run_round(world);
    round.attempt = failures;
    if (!round.verified) {
      ++report.rejected;
      round.compact();
      report.rounds.push_back(std::move(round));
      if (++failures > cfg.retries) {
        report.status = "verification_failed";
        break;
      }
      continue;
    }
    failures = 0;
    ++report.accepted;
    if (oracle.ran && round.sample_total > 0) {
      const bool all = round.participants.size() == world.devices.size();
      const Dataset subset = all ? Dataset{} : union_of(world, round.participants);
      const Dataset& data = all ? full : subset;
      const Matrix expected =
          (cfg.hp.alpha / static_cast<double>(data.samples())) *
          local_gradient(before, data, cfg.kind);
      oracle.max_round_gap =
          std::max(oracle.max_round_gap, max_abs_diff(round.update, expected));
    }
    double step = 0.0;
    for (double x : round.update) step = std::max(step, std::abs(x));
    if (!world.theta().finite()) {
      throw DivergenceError("distributed training diverged in round " +
                            std::to_string(round.round_id));
    }
    round.compact();
    report.rounds.push_back(std::move(round));
    if (step < cfg.hp.tol) {
      report.converged = true;
      report.status = "converged";
      break;
    }
  }

  report.theta = world.theta();
  report.train_metrics = eval_metrics(report.theta, train, cfg.kind);
  if (options.test != nullptr && !options.test->empty()) {
    report.test_metrics = eval_metrics(report.theta, *options.test, cfg.kind);
  }
  if (oracle.ran) {
    const GdResult central = centralized_gd(full, cfg.hp, cfg.kind);
    oracle.oracle_theta = central.params;
    oracle.oracle_iterations = central.iterations;
    oracle.oracle_converged = central.converged;
    const Matrix& a = report.theta.theta;
    const Matrix& b = central.params.theta;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double denom = std::max(std::abs(b.data()[i]), 1e-12);
      oracle.final_rel_gap = std::max(
          oracle.final_rel_gap, std::abs(a.data()[i] - b.data()[i]) / denom);
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

OverheadTable overhead_report(const std::vector<RoundReport>& reports,
                              const WorldConfig& cfg, std::size_t coords,
                              std::size_t outputs) {
  OverheadTable table;
  table.kind = cfg.kind;
  table.total_devices = cfg.devices;
  table.per_cluster = cfg.per_cluster();
  table.fogs = cfg.fogs;
  table.coords = coords;
  table.outputs = outputs;
  table.rounds = reports.size();
  const ClosedForms cf = closed_form_elements(
      cfg.devices, cfg.per_cluster(), cfg.fogs, coords, outputs);
  OverheadRow dev{Role::kDevice, 0.0, 0, cf.device, cf.flat_device};
  OverheadRow fog{Role::kFog, 0.0, 0, cf.fog, 0};
  OverheadRow cloud{Role::kCloud, 0.0, 0, cf.cloud, cf.flat_cloud};
  std::size_t dev_n = 0, fog_n = 0;
  double dev_sum = 0.0, fog_sum = 0.0, cloud_sum = 0.0;
  for (const RoundReport& r : reports) {
    for (std::size_t e : r.device_elements) {
      dev_sum += static_cast<double>(e);
      dev.measured_max = std::max(dev.measured_max, e);
      ++dev_n;
    }
    for (std::size_t e : r.fog_elements) {
      fog_sum += static_cast<double>(e);
      fog.measured_max = std::max(fog.measured_max, e);
      ++fog_n;
    }
    cloud_sum += static_cast<double>(r.cloud_elements);
    cloud.measured_max = std::max(cloud.measured_max, r.cloud_elements);
  }
  if (dev_n) dev.measured_mean = dev_sum / static_cast<double>(dev_n);
  if (fog_n) fog.measured_mean = fog_sum / static_cast<double>(fog_n);
  if (!reports.empty()) {
    cloud.measured_mean = cloud_sum / static_cast<double>(reports.size());
  }
  table.rows = {dev, fog, cloud};
  return table;
}

}  // namespace fogvl
