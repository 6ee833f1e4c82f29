#include "zkprov/bench/bench.h"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace zkprov::bench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const char* kPrompts[] = {
    "Does the intervention reduce inflammatory markers?",
    "Is the reported effect consistent across cohorts?",
    "What outcome was measured at follow-up?",
};

// Column order shared by the CSV and JSON outputs.
std::vector<std::pair<std::string, nlohmann::json>> fields(const BenchRecord& r) {
  return {{"model_profile", r.model_profile},
          {"percent", r.percent},
          {"N", r.layers},
          {"element_count", r.element_count},
          {"repetitions", r.repetitions},
          {"t_prove_ms_mean", r.t_prove_ms.mean},
          {"t_prove_ms_stddev", r.t_prove_ms.stddev},
          {"t_verify_ms_mean", r.t_verify_ms.mean},
          {"t_verify_ms_stddev", r.t_verify_ms.stddev},
          {"t_stub_inference_ms_mean", r.t_stub_inference_ms.mean},
          {"t_stub_inference_ms_stddev", r.t_stub_inference_ms.stddev},
          {"t_setup_ms", r.t_setup_ms},
          {"proof_bytes", r.proof_bytes},
          {"all_accepted", r.all_accepted}};
}

nlohmann::json record_json(const BenchRecord& r) {
  nlohmann::json j;
  for (auto& [k, v] : fields(r)) j[k] = v;
  return j;
}

std::string label(const BenchRecord& r) { return r.model_profile + "@" + std::to_string(r.percent); }

}  // namespace

Stats Stats::of(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

std::vector<protocol::DatasetInput> sample_corpus() {
  const char* topics[] = {"cardiology", "oncology", "neurology", "immunology"};
  std::vector<protocol::DatasetInput> out;
  for (int i = 0; i < 4; ++i) {
    protocol::DatasetInput d;
    d.id = std::string("pubmedqa-") + topics[i];
    for (int k = 0; k < 3; ++k) {
      nlohmann::json rec = {
          {"question", "Question " + std::to_string(k + 1) + " on " + topics[i] + " outcomes?"},
          {"context", "Cohort " + std::to_string(100 * i + k) + " in a " + topics[i] + " study."},
          {"answer", k % 2 ? "no" : "yes"}};
      d.records.push_back(rec.dump());
    }
    d.attributes = {"domain=biomedical", "lang=en", std::string("topic=") + topics[i]};
    out.push_back(std::move(d));
  }
  return out;
}

BenchRecord run_config(const BenchConfig& cfg, const Logger& log) {
  if (cfg.reps < 1) throw std::invalid_argument("reps must be positive");
  BenchRecord rec;
  rec.model_profile = weights::profile_name(cfg.profile);
  rec.percent = cfg.percent;
  rec.repetitions = cfg.reps;

  auto t_setup = Clock::now();
  DeterministicRandom rng(cfg.seed);
  auto srs = std::make_shared<commitments::KzgParams>(
      commitments::kzg_setup(16, as_bytes("bench-srs-" + std::to_string(cfg.seed))));
  auto ca = auth::KeyPair::generate(rng);
  protocol::SetupSession session(srs, ca.public_key());
  for (const auto& d : sample_corpus()) session.add_dataset(protocol::authenticate(*srs, ca, d, rng));
  auto diffs = weights::synthesize_weight_diffs(cfg.profile, cfg.percent, cfg.seed);
  rec.layers = diffs.layers();
  rec.element_count = diffs.total();
  session.commit_training({0, 1, 2, 3}, std::move(diffs), rng);
  session.commit_base_model(as_bytes("synthetic-base-" + rec.model_profile), rng);
  auto setup = session.finalize();
  zkproofs::precompute_weight_table(setup.commitments.statement().chunk_length);
  rec.t_setup_ms = ms_since(t_setup);
  if (log) log(label(rec) + ": setup " + std::to_string(rec.t_setup_ms) + " ms");

  const std::set<std::string> att = {"domain=biomedical"};
  std::vector<double> t_inf, t_prove, t_verify;
  for (int k = 0; k < cfg.reps; ++k) {
    std::string prompt = kPrompts[k % 3];
    auto t0 = Clock::now();
    auto r = weights::generate_response(prompt);
    t_inf.push_back(ms_since(t0));

    t0 = Clock::now();
    auto res = protocol::prove(setup.commitments, setup.witness, prompt, att, rng);
    auto bytes = res.bundle.serialize();
    t_prove.push_back(ms_since(t0));
    rec.proof_bytes = bytes.size();

    t0 = Clock::now();
    auto v = protocol::verify(setup.commitments, att, prompt, res.response, bytes);
    t_verify.push_back(ms_since(t0));
    rec.all_accepted = rec.all_accepted && v.accepted() && r == res.response;
    if (log) {
      log(label(rec) + " rep " + std::to_string(k + 1) + ": prove " + std::to_string(t_prove.back()) +
          " ms, verify " + std::to_string(t_verify.back()) + " ms, " + (v.accepted() ? "accept" : v.describe()));
    }
  }
  rec.t_prove_ms = Stats::of(t_prove);
  rec.t_verify_ms = Stats::of(t_verify);
  rec.t_stub_inference_ms = Stats::of(t_inf);
  return rec;
}

Checks compute_checks(const std::vector<BenchRecord>& records) {
  Checks c;
  std::map<std::string, std::map<int, double>> by_profile;
  for (const auto& r : records) by_profile[r.model_profile][r.percent] = r.t_prove_ms.mean;
  for (const auto& [profile, m] : by_profile) {
    if (m.count(10) && m.count(50)) c.scaling.push_back({profile, m.at(50) / m.at(10)});
  }
  for (size_t i = 0; i < records.size(); ++i) {
    for (size_t j = i + 1; j < records.size(); ++j) {
      const auto &a = records[i], &b = records[j];
      if (a.model_profile == b.model_profile || a.element_count != b.element_count) continue;
      double ta = a.t_prove_ms.mean, tb = b.t_prove_ms.mean;
      c.cross_profile.push_back({a.element_count, label(a), label(b), ta, tb, std::abs(ta - tb) / std::min(ta, tb)});
    }
  }
  return c;
}

std::vector<std::string> csv_columns() {
  std::vector<std::string> cols;
  for (auto& [k, v] : fields(BenchRecord{})) cols.push_back(k);
  return cols;
}

std::string to_csv(const std::vector<BenchRecord>& records) {
  auto cols = csv_columns();
  std::ostringstream out;
  for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : records) {
    size_t i = 0;
    for (auto& [k, v] : fields(r)) out << (i++ ? "," : "") << (v.is_string() ? v.get<std::string>() : v.dump());
    out << "\n";
  }
  return out.str();
}

std::string to_json(const std::vector<BenchRecord>& records, const Checks& checks) {
  nlohmann::json j;
  j["records"] = nlohmann::json::array();
  for (const auto& r : records) j["records"].push_back(record_json(r));
  j["scaling_ratio"] = nlohmann::json::array();
  for (const auto& s : checks.scaling) j["scaling_ratio"].push_back({{"model_profile", s.model_profile}, {"ratio", s.ratio}});
  j["cross_profile"] = nlohmann::json::array();
  for (const auto& c : checks.cross_profile) {
    j["cross_profile"].push_back({{"element_count", c.element_count},
                                  {"a", c.a},
                                  {"b", c.b},
                                  {"t_a_ms", c.t_a_ms},
                                  {"t_b_ms", c.t_b_ms},
                                  {"deviation", c.deviation}});
  }
  return j.dump(2) + "\n";
}

}  // namespace zkprov::bench
