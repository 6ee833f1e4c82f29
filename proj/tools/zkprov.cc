#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zkprov/bench/bench.h"
#include "zkprov/common/io.h"

using namespace zkprov;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kReject = 1, kUsage = 2, kAbort = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_json = false;

int report(int code, const std::string& command, json extra, const std::string& message) {
  static const char* status[] = {"ok", "reject", "error", "abort"};
  if (g_json) {
    extra["command"] = command;
    extra["status"] = status[code];
    extra["exit_code"] = code;
    if (!message.empty()) extra["message"] = message;
    std::cout << extra.dump() << "\n";
  } else if (code == kOk) {
    if (!message.empty()) std::cout << message << "\n";
  } else {
    std::cerr << "zkprov " << command << ": " << message << "\n";
  }
  return code;
}

std::unique_ptr<RandomSource> make_rng(const std::optional<uint64_t>& seed) {
  if (seed) return std::make_unique<DeterministicRandom>(*seed);
  return std::make_unique<OsRandom>();
}

std::string witness_key() {
  const char* k = std::getenv("ZKPROV_WITNESS_KEY");
  if (!k || !*k) throw UsageError("ZKPROV_WITNESS_KEY must hold the witness encryption passphrase");
  return k;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw UsageError("cannot read " + p.string());
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

// manifest.json: {"datasets": [{"id", "records" (JSON-lines path), "attributes"}]}
std::vector<protocol::DatasetInput> read_manifest(const fs::path& path) {
  json m;
  try {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path.string());
    m = json::parse(in);
    std::vector<protocol::DatasetInput> out;
    for (const auto& d : m.at("datasets")) {
      protocol::DatasetInput in_d;
      in_d.id = d.at("id").get<std::string>();
      in_d.records = read_lines(path.parent_path() / d.at("records").get<std::string>());
      in_d.attributes = d.at("attributes").get<std::set<std::string>>();
      out.push_back(std::move(in_d));
    }
    return out;
  } catch (const json::exception& e) {
    throw UsageError("bad manifest " + path.string() + ": " + e.what());
  }
}

std::vector<uint32_t> resolve_selection(const protocol::AuthenticationPackage& ap, const std::vector<std::string>& ids) {
  std::vector<uint32_t> sel;
  if (ids.empty()) {
    for (uint32_t i = 0; i < ap.datasets.size(); ++i) sel.push_back(i);
    return sel;
  }
  for (const auto& id : ids) {
    auto it = std::find_if(ap.datasets.begin(), ap.datasets.end(), [&](const auto& d) { return d.id == id; });
    if (it == ap.datasets.end()) throw UsageError("unknown dataset id " + id);
    sel.push_back(static_cast<uint32_t>(it - ap.datasets.begin()));
  }
  return sel;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dataset provenance proofs for fine-tuned models"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "Machine-readable output on stdout");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Create the CA key pair and the KZG reference string");
  fs::path kg_out;
  size_t srs_degree = 32;
  std::optional<uint64_t> kg_seed;
  keygen->add_option("--out", kg_out, "Output directory")->required();
  keygen->add_option("--srs-degree", srs_degree, "Maximum committed polynomial degree")->capture_default_str();
  keygen->add_option("--seed", kg_seed, "Deterministic randomness (testing only)");

  // authenticate
  auto* authn = app.add_subcommand("authenticate", "Sign dataset metadata as the CA");
  fs::path au_key, au_srs, au_manifest, au_out;
  std::optional<uint64_t> au_seed;
  authn->add_option("--ca-key", au_key)->required();
  authn->add_option("--srs", au_srs)->required();
  authn->add_option("--manifest", au_manifest, "Dataset manifest (JSON)")->required();
  authn->add_option("--out", au_out, "Authentication package")->required();
  authn->add_option("--seed", au_seed);

  // setup
  auto* setup = app.add_subcommand("setup", "Commit to datasets, training set and weight differences");
  fs::path su_srs, su_package, su_pub, su_out, su_diffs, su_base;
  std::vector<std::string> su_train;
  std::string su_model = "1b";
  int su_percent = 10;
  uint64_t su_diff_seed = 42;
  std::optional<uint64_t> su_seed;
  setup->add_option("--srs", su_srs)->required();
  setup->add_option("--package", su_package)->required();
  setup->add_option("--ca-pub", su_pub, "Trusted CA public key")->required();
  setup->add_option("--out", su_out, "Output directory")->required();
  setup->add_option("--train", su_train, "Dataset ids used for fine-tuning (default: all)")->delimiter(',');
  auto* diffs_opt = setup->add_option("--diffs", su_diffs, "ZKPWD1 weight-difference file");
  setup->add_option("--model", su_model, "Synthetic profile when --diffs is absent")->excludes(diffs_opt);
  setup->add_option("--percent", su_percent)->excludes(diffs_opt)->check(CLI::IsMember({10, 20, 30, 40, 50}));
  setup->add_option("--diff-seed", su_diff_seed)->excludes(diffs_opt);
  setup->add_option("--base-model", su_base, "Base-model checkpoint manifest");
  setup->add_option("--seed", su_seed);

  // prove
  auto* provec = app.add_subcommand("prove", "Answer a prompt with a provenance proof");
  fs::path pr_cs, pr_w, pr_out;
  std::string pr_prompt;
  std::vector<std::string> pr_attrs;
  std::optional<uint64_t> pr_seed;
  provec->add_option("--commitments", pr_cs)->required();
  provec->add_option("--witness", pr_w)->required();
  provec->add_option("--prompt", pr_prompt)->required();
  provec->add_option("--attr", pr_attrs, "Required dataset attribute (repeatable)");
  provec->add_option("--out", pr_out, "response.json")->required();
  provec->add_option("--seed", pr_seed);

  // verify
  auto* verifyc = app.add_subcommand("verify", "Check a response against the public commitments");
  fs::path ve_cs, ve_resp;
  verifyc->add_option("--commitments", ve_cs)->required();
  verifyc->add_option("--response", ve_resp)->required();

  // bench
  auto* benchc = app.add_subcommand("bench", "Prover and verifier timings over model profiles");
  std::vector<std::string> be_models = {"1b", "8b"};
  std::vector<int> be_percents = {10, 20, 30, 40, 50};
  int be_reps = 20;
  fs::path be_out = "bench-out";
  uint64_t be_seed = 42;
  benchc->add_option("--model", be_models)->delimiter(',')->check(CLI::IsMember({"1b", "8b", "1B", "8B"}));
  benchc->add_option("--percent", be_percents)->delimiter(',')->check(CLI::IsMember({10, 20, 30, 40, 50}));
  benchc->add_option("--reps", be_reps)->check(CLI::PositiveNumber)->capture_default_str();
  benchc->add_option("--out", be_out)->capture_default_str();
  benchc->add_option("--seed", be_seed)->capture_default_str();

  for (auto* sub : {keygen, authn, setup, provec, verifyc, benchc}) sub->add_flag("--json", g_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "keygen") {
      auto rng = make_rng(kg_seed);
      fs::create_directories(kg_out);
      auto ca = auth::KeyPair::generate(*rng);
      std::array<uint8_t, 32> entropy;
      rng->fill(entropy);
      auto srs = commitments::kzg_setup(srs_degree, entropy);
      ca.save(kg_out / "ca.key");
      auth::save_public_key(ca.public_key(), kg_out / "ca.pub");
      srs.save(kg_out / "srs.bin");
      return report(kOk, cmd, {{"fingerprint", ca.public_key().fingerprint()}, {"srs_degree", srs_degree}},
                    "CA key " + ca.public_key().fingerprint() + " and SRS of degree " + std::to_string(srs_degree) +
                        " written to " + kg_out.string());
    }
    if (cmd == "authenticate") {
      auto rng = make_rng(au_seed);
      auto ca = auth::KeyPair::load(au_key);
      auto srs = commitments::KzgParams::load(au_srs);
      protocol::AuthenticationPackage ap{ca.public_key(), {}};
      for (const auto& d : read_manifest(au_manifest)) ap.datasets.push_back(protocol::authenticate(srs, ca, d, *rng));
      write_file(au_out, ap.serialize());
      return report(kOk, cmd, {{"datasets", ap.datasets.size()}},
                    "authenticated " + std::to_string(ap.datasets.size()) + " datasets into " + au_out.string());
    }
    if (cmd == "setup") {
      auto pass = witness_key();
      auto rng = make_rng(su_seed);
      auto srs = std::make_shared<commitments::KzgParams>(commitments::KzgParams::load(su_srs));
      auto pk = auth::load_public_key(su_pub);
      auto ap = protocol::AuthenticationPackage::deserialize(read_file(su_package));
      auto selection = resolve_selection(ap, su_train);
      auto diffs = su_diffs.empty()
                       ? weights::synthesize_weight_diffs(weights::parse_profile(su_model), su_percent, su_diff_seed)
                       : weights::WeightDiffSet::load(su_diffs);
      std::string default_base = "synthetic-base-" + su_model;
      Bytes base = su_base.empty() ? Bytes(default_base.begin(), default_base.end()) : read_file(su_base);
      protocol::SetupSession session(srs, pk);
      session.add_package(ap);
      session.commit_training(selection, std::move(diffs), *rng);
      session.commit_base_model(base, *rng);
      auto res = session.finalize();
      fs::create_directories(su_out);
      res.commitments.save(su_out / "commitments.zkpc");
      res.witness.save_encrypted(su_out / "witness.zkpw", pass);
      const auto& st = res.commitments.statement();
      return report(kOk, cmd,
                    {{"setup_digest", res.commitments.digest_hex()}, {"layers", st.layers}, {"chunk_length", st.chunk_length}},
                    "setup digest " + res.commitments.digest_hex());
    }
    if (cmd == "prove") {
      auto pass = witness_key();
      auto rng = make_rng(pr_seed);
      auto cs = protocol::CommitmentSet::load(pr_cs);
      auto w = protocol::WitnessSet::load_encrypted(pr_w, pass, *cs.statement().srs);
      std::set<std::string> att(pr_attrs.begin(), pr_attrs.end());
      auto res = protocol::prove(cs, w, pr_prompt, att, *rng);
      protocol::ResponseFile rf{pr_prompt, att, res.response, res.bundle.serialize(), cs.digest_hex()};
      auto text = rf.to_json();
      write_file(pr_out, as_bytes(text), fs::perms::owner_read | fs::perms::owner_write | fs::perms::group_read |
                                              fs::perms::others_read);
      return report(kOk, cmd, {{"dataset_index", res.dataset_index}, {"proof_bytes", rf.proof.size()}},
                    res.response);
    }
    if (cmd == "verify") {
      auto cs = protocol::CommitmentSet::load(ve_cs);
      auto bytes = read_file(ve_resp);
      zkproofs::Verdict v;
      std::string reason;
      try {
        auto rf = protocol::ResponseFile::from_json(std::string(bytes.begin(), bytes.end()));
        v = protocol::verify_response(cs, rf);
        if (!v.accepted() && v.primary() == zkproofs::Reason::kMalformed && rf.setup_digest != cs.digest_hex()) {
          reason = "malformed/stale setup";
        }
      } catch (const DecodeError&) {
        v = zkproofs::Verdict{1u << static_cast<unsigned>(zkproofs::Reason::kMalformed)};
      }
      if (v.accepted()) return report(kOk, cmd, {{"verdict", "accept"}}, "accept");
      if (reason.empty()) reason = zkproofs::reason_name(*v.primary());
      return report(kReject, cmd, {{"verdict", "reject"}, {"reason", reason}, {"failed", v.describe()}},
                    "reject: " + reason + " (" + v.describe() + ")");
    }
    if (cmd == "bench") {
      fs::create_directories(be_out);
      std::vector<bench::BenchRecord> records;
      auto log = [](const std::string& s) { std::cerr << s << std::endl; };
      for (const auto& m : be_models) {
        for (int p : be_percents) {
          records.push_back(bench::run_config({weights::parse_profile(m), p, be_reps, be_seed}, log));
        }
      }
      auto checks = bench::compute_checks(records);
      auto csv = bench::to_csv(records);
      auto js = bench::to_json(records, checks);
      write_file(be_out / "bench.csv", as_bytes(csv), fs::perms::owner_read | fs::perms::owner_write |
                                                          fs::perms::group_read | fs::perms::others_read);
      write_file(be_out / "bench.json", as_bytes(js), fs::perms::owner_read | fs::perms::owner_write |
                                                          fs::perms::group_read | fs::perms::others_read);
      if (g_json) {
        std::cout << js;
        return kOk;
      }
      std::cout << csv;
      for (const auto& s : checks.scaling) std::cout << "scaling " << s.model_profile << " t(50%)/t(10%) = " << s.ratio << "\n";
      for (const auto& c : checks.cross_profile) {
        std::cout << "cross-profile " << c.a << " vs " << c.b << " (" << c.element_count << " elements): deviation "
                  << c.deviation << "\n";
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    return report(kUsage, cmd, {}, e.what());
  } catch (const zkproofs::ProofAbort& e) {
    return report(kAbort, cmd, {{"reason", e.what()}}, e.what());
  } catch (const protocol::SetupAbort& e) {
    return report(kAbort, cmd, {{"reason", e.what()}}, e.what());
  } catch (const protocol::PhaseError& e) {
    return report(kAbort, cmd, {{"reason", e.what()}}, e.what());
  } catch (const DecodeError& e) {
    return report(kUsage, cmd, {}, std::string("unreadable input: ") + e.what());
  } catch (const std::exception& e) {
    return report(kUsage, cmd, {}, e.what());
  }
  return kUsage;
}
