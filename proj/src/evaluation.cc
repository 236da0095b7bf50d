// Copyright 2026 The Synthrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "synthrisk/evaluation.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include "synthrisk/inference.h"
#include "synthrisk/parallel.h"

namespace synthrisk {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Stream indices for seeds that are not tied to a setting.
constexpr uint64_t kUtilityStream = 0x7574696c;    // utility queries
constexpr uint64_t kBootstrapStream = 0x626f6f74;  // aggregate bootstrap
constexpr uint64_t kSubsetStream = 3;              // random attribute subsets
constexpr uint64_t kCorrectionStream = 2;          // correction subsamples

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw InvalidArgument("config: " + where + ": " + what);
}

void CheckKeys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) Fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      Fail(where, "unknown key '" + key + "'");
    }
  }
}

size_t GetCount(const json& obj, const char* key, const std::string& where, size_t fallback,
                size_t min_value) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
    Fail(where + "." + key, "expected a non-negative integer");
  }
  const auto n = v.get<uint64_t>();
  if (n < min_value) Fail(where + "." + key, "must be >= " + std::to_string(min_value));
  return static_cast<size_t>(n);
}

double GetReal(const json& obj, const char* key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) Fail(where + "." + key, "expected a number");
  return obj.at(key).get<double>();
}

std::vector<size_t> GetCountList(const json& obj, const char* key, const std::string& where,
                                 std::vector<size_t> fallback, size_t min_value) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array() || v.empty()) Fail(where + "." + key, "expected a non-empty array");
  std::vector<size_t> out;
  for (size_t i = 0; i < v.size(); ++i) {
    json wrap = {{"v", v[i]}};
    out.push_back(GetCount(wrap, "v", where + "." + key + "[" + std::to_string(i) + "]", 0,
                           min_value));
  }
  return out;
}

std::vector<std::string> GetNames(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) Fail(where, "expected a non-empty array of attribute names");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) Fail(where, "attribute names must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::filesystem::path GetPath(const json& doc, const char* key,
                              const std::filesystem::path& base_dir) {
  if (!doc.contains(key)) Fail(key, "missing required path");
  if (!doc.at(key).is_string()) Fail(key, "expected a path string");
  std::filesystem::path p = doc.at(key).get<std::string>();
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

SinglingOutSweep ParseSinglingOut(const json& obj) {
  const std::string w = "singling_out";
  CheckKeys(obj, w, {"n_attacks", "modes", "n_attrs", "max_generation_factor"});
  SinglingOutSweep s;
  s.n_attacks = GetCount(obj, "n_attacks", w, s.n_attacks, 1);
  if (obj.contains("modes")) {
    const json& m = obj.at("modes");
    if (!m.is_array() || m.empty()) Fail(w + ".modes", "expected a non-empty array");
    s.modes.clear();
    for (const auto& e : m) {
      if (!e.is_string()) Fail(w + ".modes", "expected mode names");
      s.modes.push_back(singling_out::ParseMode(e.get<std::string>()));
    }
  }
  s.n_attrs = GetCountList(obj, "n_attrs", w, s.n_attrs, 0);
  s.max_generation_factor = GetCount(obj, "max_generation_factor", w, s.max_generation_factor, 1);
  return s;
}

LinkabilitySweep ParseLinkability(const json& obj) {
  const std::string w = "linkability";
  CheckKeys(obj, w, {"n_attacks", "aux_splits", "aux_sizes", "k"});
  LinkabilitySweep s;
  s.n_attacks = GetCount(obj, "n_attacks", w, s.n_attacks, 1);
  if (obj.contains("aux_splits")) {
    const json& splits = obj.at("aux_splits");
    if (!splits.is_array() || splits.empty()) Fail(w + ".aux_splits", "expected a non-empty array");
    for (size_t i = 0; i < splits.size(); ++i) {
      const std::string wi = w + ".aux_splits[" + std::to_string(i) + "]";
      CheckKeys(splits[i], wi, {"a", "b"});
      if (!splits[i].contains("a") || !splits[i].contains("b")) Fail(wi, "needs 'a' and 'b'");
      s.aux_splits.push_back({GetNames(splits[i].at("a"), wi + ".a"),
                              GetNames(splits[i].at("b"), wi + ".b")});
    }
  }
  s.aux_sizes = GetCountList(obj, "aux_sizes", w, s.aux_sizes, 0);
  s.k = GetCountList(obj, "k", w, s.k, 1);
  return s;
}

InferenceSweep ParseInference(const json& obj) {
  const std::string w = "inference";
  CheckKeys(obj, w, {"n_attacks", "secrets", "aux_cols", "aux_sizes", "tolerance"});
  InferenceSweep s;
  s.n_attacks = GetCount(obj, "n_attacks", w, s.n_attacks, 1);
  if (obj.contains("secrets")) {
    const json& v = obj.at("secrets");
    if (!(v.is_string() && v.get<std::string>() == "*")) s.secrets = GetNames(v, w + ".secrets");
  }
  if (obj.contains("aux_cols")) {
    const json& v = obj.at("aux_cols");
    if (!v.is_array() || v.empty()) Fail(w + ".aux_cols", "expected a non-empty array");
    for (size_t i = 0; i < v.size(); ++i) {
      s.aux_cols.push_back(GetNames(v[i], w + ".aux_cols[" + std::to_string(i) + "]"));
    }
  }
  s.aux_sizes = GetCountList(obj, "aux_sizes", w, s.aux_sizes, 0);
  s.tolerance = GetReal(obj, "tolerance", w, s.tolerance);
  if (!(s.tolerance >= 0.0)) Fail(w + ".tolerance", "must be non-negative");
  return s;
}

std::vector<std::string> RandomSubset(const std::vector<std::string>& pool, size_t size,
                                      Rng& rng) {
  std::vector<std::string> out;
  for (size_t i : SampleWithoutReplacement(pool.size(), size, rng)) out.push_back(pool[i]);
  return out;
}

void CheckAttributes(const std::vector<std::string>& names,
                     const std::vector<std::string>& attributes, const std::string& where) {
  for (const auto& n : names) {
    if (std::find(attributes.begin(), attributes.end(), n) == attributes.end()) {
      throw InvalidArgument(where + ": unknown attribute '" + n + "'");
    }
  }
}

ordered_json EstimateJson(const RiskEstimate& e) {
  const auto [lo, hi] = e.Interval();
  return {{"rate", e.rate},
          {"delta", e.delta},
          {"ci", {lo, hi}},
          {"n_success", e.n_success},
          {"n_attacks", e.n_attacks}};
}

ordered_json SettingParamsJson(const AttackSetting& s) {
  ordered_json p;
  p["n_attacks"] = s.n_attacks;
  switch (s.kind) {
    case AttackKind::kSinglingOut:
      p["mode"] = std::string(singling_out::ToString(s.mode));
      p["n_attrs"] = s.n_attrs;
      p["max_generation_factor"] = s.max_generation_factor;
      break;
    case AttackKind::kLinkability:
      p["aux_a"] = s.split.a;
      p["aux_b"] = s.split.b;
      p["k"] = s.k;
      break;
    case AttackKind::kInference:
      p["secret"] = s.secret;
      p["aux"] = s.aux;
      p["tolerance"] = s.tolerance;
      break;
  }
  return p;
}

ordered_json SettingJson(const SettingResult& r) {
  ordered_json j;
  j["index"] = r.setting.index;
  j["attack"] = std::string(ToString(r.setting.kind));
  j["repetition"] = r.setting.repetition;
  j["seed"] = r.setting.seed;
  j["params"] = SettingParamsJson(r.setting);
  j["status"] = r.ok ? "ok" : "error";
  if (!r.ok) {
    j["error"] = r.error;
    return j;
  }
  const RiskAssessment& a = r.assessment;
  j["train"] = EstimateJson(a.train);
  j["naive"] = EstimateJson(a.naive);
  j["control"] = EstimateJson(a.control);
  if (r.correction) {
    ordered_json c;
    c["applied"] = r.correction->applied;
    c["m_control_raw"] = r.correction->m_control_raw;
    c["m_control"] = a.control.n_success;
    c["scale"] = r.correction->scale;
    if (r.correction->applied || r.correction->model.degenerate) {
      c["amplitude"] = r.correction->model.amplitude;
      c["effective_weight"] = r.correction->model.effective_weight;
      c["fit_residual"] = r.correction->model.fit_residual;
      c["degenerate"] = r.correction->model.degenerate;
      c["poor_fit"] = r.correction->model.poor_fit;
    }
    j["correction"] = c;
    j["guesses_exhausted"] = r.exhausted;
  }
  j["strength"] = {{"value", a.strength.value},
                   {"delta", a.strength.delta},
                   {"failed", a.strength.failed}};
  j["risk"] = {{"raw", a.risk.raw},
               {"value", a.risk.value},
               {"delta", a.risk.delta},
               {"ci", {a.risk.ci.first, a.risk.ci.second}}};
  j["excluded"] = a.risk.is_excluded();
  j["exclusion_reason"] = std::string(ToString(a.risk.excluded));
  return j;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

std::string_view ToString(AttackKind kind) {
  switch (kind) {
    case AttackKind::kSinglingOut: return "singling_out";
    case AttackKind::kLinkability: return "linkability";
    case AttackKind::kInference: return "inference";
  }
  return "unknown";
}

RunConfig ParseRunConfig(const json& doc, const std::filesystem::path& base_dir) {
  CheckKeys(doc, "root",
            {"train", "control", "synthetic", "schema", "output", "alpha", "seed", "workers",
             "repetitions", "control_rate_cut", "bootstrap_resamples", "include_timing",
             "singling_out", "linkability", "inference", "utility"});
  RunConfig cfg;
  cfg.train = GetPath(doc, "train", base_dir);
  cfg.control = GetPath(doc, "control", base_dir);
  cfg.synthetic = GetPath(doc, "synthetic", base_dir);
  if (doc.contains("schema")) cfg.schema = GetPath(doc, "schema", base_dir);
  if (doc.contains("output")) cfg.output = GetPath(doc, "output", base_dir);
  cfg.alpha = GetReal(doc, "alpha", "root", cfg.alpha);
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) Fail("alpha", "must lie in (0, 1)");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) Fail("seed", "expected a non-negative integer");
    cfg.seed = doc.at("seed").get<uint64_t>();
  }
  cfg.workers = GetCount(doc, "workers", "root", cfg.workers, 0);
  cfg.repetitions = GetCount(doc, "repetitions", "root", cfg.repetitions, 1);
  cfg.control_rate_cut = GetReal(doc, "control_rate_cut", "root", cfg.control_rate_cut);
  if (!(cfg.control_rate_cut > 0.0 && cfg.control_rate_cut <= 1.0)) {
    Fail("control_rate_cut", "must lie in (0, 1]");
  }
  cfg.bootstrap_resamples =
      GetCount(doc, "bootstrap_resamples", "root", cfg.bootstrap_resamples, 0);
  if (doc.contains("include_timing")) {
    if (!doc.at("include_timing").is_boolean()) Fail("include_timing", "expected a boolean");
    cfg.include_timing = doc.at("include_timing").get<bool>();
  }
  if (doc.contains("singling_out")) cfg.singling_out = ParseSinglingOut(doc.at("singling_out"));
  if (doc.contains("linkability")) cfg.linkability = ParseLinkability(doc.at("linkability"));
  if (doc.contains("inference")) cfg.inference = ParseInference(doc.at("inference"));
  if (doc.contains("utility")) {
    const json& u = doc.at("utility");
    CheckKeys(u, "utility", {"enabled", "n_queries"});
    if (u.contains("enabled")) {
      if (!u.at("enabled").is_boolean()) Fail("utility.enabled", "expected a boolean");
      cfg.utility.enabled = u.at("enabled").get<bool>();
    }
    cfg.utility.n_queries = GetCount(u, "n_queries", "utility", cfg.utility.n_queries, 2);
  }
  if (!cfg.singling_out && !cfg.linkability && !cfg.inference) {
    Fail("root", "at least one of singling_out, linkability or inference is required");
  }
  return cfg;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return ParseRunConfig(doc, path.parent_path());
}

std::vector<AttackSetting> ExpandSettings(const RunConfig& cfg,
                                          const std::vector<std::string>& attributes) {
  const size_t d = attributes.size();
  std::vector<AttackSetting> base;
  if (cfg.singling_out) {
    const auto& so = *cfg.singling_out;
    for (auto mode : so.modes) {
      std::vector<size_t> sizes{1};
      if (mode == singling_out::Mode::kMultivariate) sizes = so.n_attrs;
      std::set<size_t> seen;
      for (size_t n : sizes) {
        const size_t n_attrs = n == 0 ? d : n;
        if (n_attrs > d) {
          throw InvalidArgument("singling_out.n_attrs " + std::to_string(n) + " exceeds the " +
                                std::to_string(d) + " attributes");
        }
        if (!seen.insert(n_attrs).second) continue;
        AttackSetting s;
        s.kind = AttackKind::kSinglingOut;
        s.n_attacks = so.n_attacks;
        s.mode = mode;
        s.n_attrs = n_attrs;
        s.max_generation_factor = so.max_generation_factor;
        base.push_back(s);
      }
    }
  }
  if (cfg.linkability) {
    const auto& lk = *cfg.linkability;
    std::vector<std::pair<linkability::AuxSplit, size_t>> splits;  // (split, random size)
    for (const auto& sp : lk.aux_splits) {
      CheckAttributes(sp.a, attributes, "linkability.aux_splits");
      CheckAttributes(sp.b, attributes, "linkability.aux_splits");
      splits.push_back({sp, 0});
    }
    if (lk.aux_splits.empty()) {
      for (size_t n : lk.aux_sizes) {
        const size_t size = n == 0 ? d : n;
        if (size < 2 || size > d) {
          throw InvalidArgument("linkability.aux_sizes entries must lie in [2, " +
                                std::to_string(d) + "]");
        }
        splits.push_back({{}, size});
      }
    }
    for (const auto& [split, size] : splits) {
      for (size_t k : lk.k) {
        AttackSetting s;
        s.kind = AttackKind::kLinkability;
        s.n_attacks = lk.n_attacks;
        s.split = split;
        s.n_attrs = size;
        s.k = k;
        base.push_back(s);
      }
    }
  }
  if (cfg.inference) {
    const auto& inf = *cfg.inference;
    const std::vector<std::string> secrets = inf.secrets.empty() ? attributes : inf.secrets;
    CheckAttributes(secrets, attributes, "inference.secrets");
    for (const auto& secret : secrets) {
      std::vector<std::pair<std::vector<std::string>, size_t>> auxes;
      for (const auto& aux : inf.aux_cols) {
        CheckAttributes(aux, attributes, "inference.aux_cols");
        auxes.push_back({aux, 0});
      }
      if (inf.aux_cols.empty()) {
        for (size_t n : inf.aux_sizes) {
          const size_t size = n == 0 ? d - 1 : n;
          if (size < 1 || size > d - 1) {
            throw InvalidArgument("inference.aux_sizes entries must lie in [1, " +
                                  std::to_string(d - 1) + "]");
          }
          auxes.push_back({{}, size});
        }
      }
      for (const auto& [aux, size] : auxes) {
        AttackSetting s;
        s.kind = AttackKind::kInference;
        s.n_attacks = inf.n_attacks;
        s.secret = secret;
        s.aux = aux;
        s.n_attrs = size;
        s.tolerance = inf.tolerance;
        base.push_back(s);
      }
    }
  }

  std::vector<AttackSetting> out;
  for (size_t rep = 0; rep < cfg.repetitions; ++rep) {
    for (const auto& b : base) {
      AttackSetting s = b;
      s.index = out.size();
      s.repetition = rep;
      s.seed = DeriveSeed(cfg.seed, s.index);
      Rng subset_rng(DeriveSeed(s.seed, kSubsetStream));
      if (s.kind == AttackKind::kLinkability && s.split.a.empty()) {
        auto cols = RandomSubset(attributes, s.n_attrs, subset_rng);
        const size_t half = (cols.size() + 1) / 2;
        s.split.a.assign(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(half));
        s.split.b.assign(cols.begin() + static_cast<std::ptrdiff_t>(half), cols.end());
      }
      if (s.kind == AttackKind::kInference && s.aux.empty()) {
        std::vector<std::string> pool;
        for (const auto& a : attributes) {
          if (a != s.secret) pool.push_back(a);
        }
        s.aux = RandomSubset(pool, s.n_attrs, subset_rng);
      }
      if (s.kind == AttackKind::kLinkability) s.n_attrs = s.split.a.size() + s.split.b.size();
      if (s.kind == AttackKind::kInference) s.n_attrs = s.aux.size();
      out.push_back(std::move(s));
    }
  }
  return out;
}

RiskAssessment AssessCounts(double m_train, size_t n_train_attacks, double m_naive,
                            size_t n_naive_attacks, double m_control, size_t n_control_attacks,
                            double alpha, double control_rate_cut) {
  return Assess(Wilson(m_train, n_train_attacks, alpha), Wilson(m_naive, n_naive_attacks, alpha),
                Wilson(m_control, n_control_attacks, alpha), control_rate_cut);
}

SettingResult RunSetting(const AttackSetting& setting, const Dataset& syn, const Dataset& train,
                         const Dataset& control, double alpha, double control_rate_cut,
                         size_t workers) {
  SettingResult out;
  out.setting = setting;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (setting.kind) {
      case AttackKind::kSinglingOut: {
        singling_out::Config c;
        c.n_attacks = setting.n_attacks;
        c.mode = setting.mode;
        c.n_attrs = setting.n_attrs;
        c.seed = setting.seed;
        c.max_generation_factor = setting.max_generation_factor;
        const auto r = singling_out::Run(syn, train, control, c, workers);
        if (r.predicates.empty()) {
          throw DataError("no predicate singles out a synthetic record");
        }
        Rng rng(DeriveSeed(setting.seed, kCorrectionStream));
        const auto corrected = singling_out::CorrectControlSuccesses(r, train, control, rng,
                                                                     workers);
        out.correction = CorrectionInfo{corrected.applied, static_cast<double>(r.m_control),
                                        corrected.scale, corrected.model};
        out.exhausted = r.exhausted;
        const size_t n = r.predicates.size();
        out.assessment = Assess(
            Wilson(static_cast<double>(r.m_train), n, alpha),
            Wilson(static_cast<double>(r.m_naive), r.naive_predicates.size(), alpha),
            ScaledWilson(static_cast<double>(r.m_control), corrected.scale, n, alpha),
            control_rate_cut);
        break;
      }
      case AttackKind::kLinkability: {
        linkability::Config c;
        c.aux = setting.split;
        c.n_attacks = setting.n_attacks;
        c.k = setting.k;
        c.seed = setting.seed;
        const auto r = linkability::Run(syn, train, control, c, workers);
        out.assessment = AssessCounts(
            static_cast<double>(r.outcomes_main.successes()), r.outcomes_main.size(),
            static_cast<double>(r.outcomes_naive.successes()), r.outcomes_naive.size(),
            static_cast<double>(r.outcomes_control.successes()), r.outcomes_control.size(),
            alpha, control_rate_cut);
        break;
      }
      case AttackKind::kInference: {
        inference::Config c;
        c.aux_cols = setting.aux;
        c.secret = setting.secret;
        c.n_attacks = setting.n_attacks;
        c.tolerance = setting.tolerance;
        c.seed = setting.seed;
        const auto r = inference::Run(syn, train, control, c, workers);
        out.assessment = AssessCounts(
            static_cast<double>(r.outcomes_main.successes()), r.outcomes_main.size(),
            static_cast<double>(r.outcomes_naive.successes()), r.outcomes_naive.size(),
            static_cast<double>(r.outcomes_control.successes()), r.outcomes_control.size(),
            alpha, control_rate_cut);
        break;
      }
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
    out.correction.reset();
  }
  out.seconds = Seconds(start);
  return out;
}

bool Evaluation::all_ok() const {
  return std::all_of(settings.begin(), settings.end(),
                     [](const SettingResult& r) { return r.ok; });
}

Evaluation Evaluate(const RunConfig& cfg, const Dataset& train, const Dataset& control,
                    const Dataset& syn) {
  const auto start = std::chrono::steady_clock::now();
  Evaluation ev;
  // Attributes shared by all three tables, in synthetic column order.
  for (const auto& spec : Align(syn, train)) {
    if (control.FindColumn(spec.name)) ev.attributes.push_back(spec.name);
  }
  Align(syn, control);
  if (ev.attributes.empty()) throw DataError("train, control and synthetic share no attribute");
  const Dataset s = syn.Select(ev.attributes);
  const Dataset t = train.Select(ev.attributes);
  const Dataset c = control.Select(ev.attributes);
  for (const auto& name : syn.column_names()) {
    if (std::find(ev.attributes.begin(), ev.attributes.end(), name) == ev.attributes.end()) {
      ev.warnings.push_back("attribute '" + name + "' is not present in every input; ignored");
    }
  }
  ev.train_rows = t.n_rows();
  ev.control_rows = c.n_rows();
  ev.synthetic_rows = s.n_rows();

  const auto settings = ExpandSettings(cfg, ev.attributes);
  const size_t workers = ResolveWorkers(cfg.workers);
  const size_t outer = std::max<size_t>(1, std::min(workers, settings.size()));
  const size_t inner = std::max<size_t>(1, workers / outer);
  ev.settings.resize(settings.size());
  ParallelFor(settings.size(), outer, [&](size_t i) {
    ev.settings[i] = RunSetting(settings[i], s, t, c, cfg.alpha, cfg.control_rate_cut, inner);
  });

  for (AttackKind kind :
       {AttackKind::kSinglingOut, AttackKind::kLinkability, AttackKind::kInference}) {
    Aggregate agg;
    std::vector<double> values;
    for (const auto& r : ev.settings) {
      if (r.setting.kind != kind) continue;
      ++agg.n_settings;
      if (r.ok && !r.assessment.risk.is_excluded()) values.push_back(r.assessment.risk.value);
    }
    if (agg.n_settings == 0) continue;
    agg.n_valid = values.size();
    if (!values.empty()) {
      const uint64_t seed = DeriveSeed(cfg.seed, kBootstrapStream + static_cast<uint64_t>(kind));
      agg.mean = BootstrapMeanInterval(values, cfg.bootstrap_resamples, cfg.alpha, seed);
      agg.max = *std::max_element(values.begin(), values.end());
    }
    ev.aggregates.emplace_back(kind, agg);
  }

  if (cfg.utility.enabled) {
    ev.utility = utility::Score(t, s, cfg.utility.n_queries, DeriveSeed(cfg.seed, kUtilityStream),
                                workers);
  }
  ev.seconds = Seconds(start);
  return ev;
}

ordered_json ReportToJson(const RunConfig& cfg, const Evaluation& ev) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = {{"name", "synthrisk"}, {"version", kToolVersion}};
  ordered_json conf;
  conf["train"] = cfg.train.string();
  conf["control"] = cfg.control.string();
  conf["synthetic"] = cfg.synthetic.string();
  conf["alpha"] = cfg.alpha;
  conf["seed"] = cfg.seed;
  conf["repetitions"] = cfg.repetitions;
  conf["control_rate_cut"] = cfg.control_rate_cut;
  conf["bootstrap_resamples"] = cfg.bootstrap_resamples;
  j["config"] = conf;
  j["datasets"] = {{"train", {{"rows", ev.train_rows}}},
                   {"control", {{"rows", ev.control_rows}}},
                   {"synthetic", {{"rows", ev.synthetic_rows}}},
                   {"attributes", ev.attributes}};
  ordered_json settings = ordered_json::array();
  for (const auto& r : ev.settings) settings.push_back(SettingJson(r));
  j["settings"] = settings;
  ordered_json aggs = ordered_json::object();
  for (const auto& [kind, agg] : ev.aggregates) {
    ordered_json a;
    a["n_settings"] = agg.n_settings;
    a["n_valid"] = agg.n_valid;
    if (agg.mean) {
      a["mean"] = agg.mean->mean;
      a["ci"] = {agg.mean->low, agg.mean->high};
      a["max"] = *agg.max;
    } else {
      a["mean"] = nullptr;
      a["ci"] = nullptr;
      a["max"] = nullptr;
    }
    aggs[std::string(ToString(kind))] = a;
  }
  j["aggregates"] = aggs;
  if (ev.utility) {
    const auto& u = *ev.utility;
    ordered_json uj;
    uj["marginal"] = u.marginal;
    uj["pairwise"] = u.pairwise ? ordered_json(*u.pairwise) : ordered_json(nullptr);
    uj["query"] = u.query;
    uj["total"] = u.total;
    ordered_json cols = ordered_json::array();
    for (const auto& c : u.columns) {
      cols.push_back({{"name", c.name}, {"statistic", c.statistic}, {"value", c.value},
                      {"score", c.score}});
    }
    uj["columns"] = cols;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : u.pairs) {
      pairs.push_back({{"first", p.first}, {"second", p.second}, {"statistic", p.statistic},
                       {"original", p.original}, {"synthetic", p.synthetic}, {"score", p.score}});
    }
    uj["pairs"] = pairs;
    uj["warnings"] = u.warnings;
    j["utility"] = uj;
  } else {
    j["utility"] = nullptr;
  }
  j["warnings"] = ev.warnings;
  if (cfg.include_timing) {
    ordered_json per = ordered_json::array();
    for (const auto& r : ev.settings) {
      per.push_back({{"index", r.setting.index}, {"seconds", r.seconds}});
    }
    j["timing"] = {{"total_seconds", ev.seconds}, {"settings", per}};
  }
  return j;
}

Evaluation RunEvaluation(const RunConfig& cfg) {
  SchemaOverride schema;
  if (cfg.schema) schema = LoadSchemaOverride(*cfg.schema);
  const Dataset train = LoadCsv(cfg.train, schema, DatasetRole::kTrain);
  const Dataset control = LoadCsv(cfg.control, schema, DatasetRole::kControl);
  const Dataset syn = LoadCsv(cfg.synthetic, schema, DatasetRole::kSynthetic);
  return Evaluate(cfg, train, control, syn);
}

}  // namespace synthrisk
