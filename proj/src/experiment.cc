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


#include "synthrisk/experiment.h"

#include <charconv>
#include <fstream>
#include <ostream>

#include "synthrisk/datagen.h"
#include "synthrisk/leaky.h"
#include "synthrisk/parallel.h"

namespace synthrisk {

namespace {

using nlohmann::json;

constexpr uint64_t kSplitStream = 1;
constexpr uint64_t kLeakyStream = 0x100;
constexpr uint64_t kAttackStream = 0x200;
constexpr uint64_t kSubsetStream = 0x300;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw InvalidArgument("experiment config: " + where + ": " + what);
}

size_t Count(const json& doc, const char* key, size_t fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number_unsigned()) Fail(key, "expected a non-negative integer");
  return doc.at(key).get<size_t>();
}

std::string Number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::vector<std::string> Subset(const std::vector<std::string>& pool, size_t size, Rng& rng) {
  std::vector<std::string> out;
  for (size_t i : SampleWithoutReplacement(pool.size(), size, rng)) out.push_back(pool[i]);
  return out;
}

struct Job {
  size_t seed_index;
  size_t f_index;
  size_t aux_index;
  AttackKind kind;
};

}  // namespace

LinearityConfig ParseLinearityConfig(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) Fail("root", "expected an object");
  static const char* kKeys[] = {"dataset", "schema", "generate_rows", "split", "m", "f_l",
                                "aux_sizes", "seeds", "n_attacks", "secret", "alpha",
                                "control_rate_cut", "workers", "output"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      Fail("root", "unknown key '" + key + "'");
    }
  }
  auto path = [&](const char* key) {
    if (!doc.at(key).is_string()) Fail(key, "expected a path string");
    std::filesystem::path p = doc.at(key).get<std::string>();
    return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
  };
  LinearityConfig cfg;
  if (doc.contains("dataset")) cfg.dataset = path("dataset");
  if (doc.contains("schema")) cfg.schema = path("schema");
  if (doc.contains("output")) cfg.output = path("output");
  cfg.generate_rows = Count(doc, "generate_rows", cfg.generate_rows);
  if (doc.contains("split")) {
    const json& s = doc.at("split");
    if (!s.is_object()) Fail("split", "expected an object");
    cfg.n_train = Count(s, "train", cfg.n_train);
    cfg.n_control = Count(s, "control", cfg.n_control);
    cfg.n_release = Count(s, "release", cfg.n_release);
  }
  cfg.m = Count(doc, "m", cfg.m);
  cfg.n_attacks = Count(doc, "n_attacks", cfg.n_attacks);
  cfg.workers = Count(doc, "workers", cfg.workers);
  if (doc.contains("f_l")) {
    const json& v = doc.at("f_l");
    if (!v.is_array() || v.empty()) Fail("f_l", "expected a non-empty array");
    cfg.f_l.clear();
    for (const auto& e : v) {
      if (!e.is_number() || e.get<double>() < 0.0 || e.get<double>() > 1.0) {
        Fail("f_l", "entries must be numbers in [0, 1]");
      }
      cfg.f_l.push_back(e.get<double>());
    }
  }
  if (doc.contains("aux_sizes")) {
    const json& v = doc.at("aux_sizes");
    if (!v.is_array() || v.empty()) Fail("aux_sizes", "expected a non-empty array");
    cfg.aux_sizes.clear();
    for (const auto& e : v) {
      if (!e.is_number_unsigned()) Fail("aux_sizes", "expected non-negative integers");
      cfg.aux_sizes.push_back(e.get<size_t>());
    }
  }
  if (doc.contains("seeds")) {
    const json& v = doc.at("seeds");
    if (!v.is_array() || v.empty()) Fail("seeds", "expected a non-empty array");
    cfg.seeds.clear();
    for (const auto& e : v) {
      if (!e.is_number_unsigned()) Fail("seeds", "expected non-negative integers");
      cfg.seeds.push_back(e.get<uint64_t>());
    }
  }
  if (doc.contains("secret")) {
    if (!doc.at("secret").is_string()) Fail("secret", "expected an attribute name");
    cfg.secret = doc.at("secret").get<std::string>();
  }
  if (doc.contains("alpha")) {
    if (!doc.at("alpha").is_number()) Fail("alpha", "expected a number");
    cfg.alpha = doc.at("alpha").get<double>();
  }
  if (doc.contains("control_rate_cut")) {
    if (!doc.at("control_rate_cut").is_number()) Fail("control_rate_cut", "expected a number");
    cfg.control_rate_cut = doc.at("control_rate_cut").get<double>();
  }
  if (cfg.n_attacks == 0) Fail("n_attacks", "must be >= 1");
  if (cfg.m == 0) Fail("m", "must be >= 1");
  return cfg;
}

LinearityConfig LoadLinearityConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return ParseLinearityConfig(doc, path.parent_path());
}

std::vector<LinearityRow> RunLinearityExperiment(const LinearityConfig& cfg) {
  struct Prepared {
    ThreeWaySplit split;
    std::vector<Dataset> leaky;
  };
  std::vector<Prepared> prepared;
  std::vector<std::string> attributes;
  std::string secret = cfg.secret;
  for (uint64_t seed : cfg.seeds) {
    Dataset data = cfg.dataset ? LoadCsv(*cfg.dataset,
                                         cfg.schema ? LoadSchemaOverride(*cfg.schema)
                                                    : SchemaOverride{})
                               : GenerateMixedDataset(cfg.generate_rows, seed);
    if (attributes.empty()) {
      attributes = data.column_names();
      if (attributes.size() < 2) throw DataError("experiment needs at least two attributes");
      if (secret.empty()) {
        for (const auto& spec : data.schema()) {
          if (spec.kind == ColumnKind::kCategorical) {
            secret = spec.name;
            break;
          }
        }
        if (secret.empty()) secret = attributes.back();
      }
      data.ColumnIndex(secret);
    }
    Prepared p{SplitThreeWay(data, cfg.n_train, cfg.n_control, cfg.n_release,
                             DeriveSeed(seed, kSplitStream)),
               {}};
    for (size_t f = 0; f < cfg.f_l.size(); ++f) {
      p.leaky.push_back(LeakySynthesize(p.split.train, p.split.release,
                                        {cfg.f_l[f], cfg.m, DeriveSeed(seed, kLeakyStream + f)}));
    }
    prepared.push_back(std::move(p));
  }
  const size_t d = attributes.size();
  for (size_t a : cfg.aux_sizes) {
    if (a > d) throw InvalidArgument("aux size " + std::to_string(a) + " exceeds " +
                                     std::to_string(d) + " attributes");
  }

  std::vector<Job> jobs;
  for (size_t s = 0; s < cfg.seeds.size(); ++s) {
    for (size_t f = 0; f < cfg.f_l.size(); ++f) {
      for (size_t a = 0; a < cfg.aux_sizes.size(); ++a) {
        for (AttackKind kind :
             {AttackKind::kSinglingOut, AttackKind::kLinkability, AttackKind::kInference}) {
          jobs.push_back({s, f, a, kind});
        }
      }
    }
  }
  std::vector<LinearityRow> rows(jobs.size());
  ParallelFor(jobs.size(), ResolveWorkers(cfg.workers), [&](size_t j) {
    const Job& job = jobs[j];
    const uint64_t seed = cfg.seeds[job.seed_index];
    const size_t aux = cfg.aux_sizes[job.aux_index] == 0 ? d : cfg.aux_sizes[job.aux_index];
    AttackSetting s;
    s.kind = job.kind;
    s.index = j;
    s.seed = DeriveSeed(DeriveSeed(seed, kAttackStream + job.f_index),
                        job.aux_index * 3 + static_cast<size_t>(job.kind));
    s.n_attacks = cfg.n_attacks;
    // Attribute subsets depend on the seed and aux size only, so every leak
    // fraction on one curve attacks the same columns.
    Rng subset_rng(DeriveSeed(DeriveSeed(seed, kSubsetStream),
                              job.aux_index * 3 + static_cast<size_t>(job.kind)));
    switch (job.kind) {
      case AttackKind::kSinglingOut:
        s.mode = singling_out::Mode::kMultivariate;
        s.n_attrs = aux;
        s.max_generation_factor = 50;
        break;
      case AttackKind::kLinkability: {
        auto cols = Subset(attributes, std::max<size_t>(aux, 2), subset_rng);
        const size_t half = (cols.size() + 1) / 2;
        s.split.a.assign(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(half));
        s.split.b.assign(cols.begin() + static_cast<std::ptrdiff_t>(half), cols.end());
        s.k = 1;
        break;
      }
      case AttackKind::kInference: {
        std::vector<std::string> pool;
        for (const auto& name : attributes) {
          if (name != secret) pool.push_back(name);
        }
        s.secret = secret;
        s.aux = Subset(pool, std::min(aux, d - 1), subset_rng);
        s.tolerance = 0.05;
        break;
      }
    }
    const Prepared& p = prepared[job.seed_index];
    const SettingResult r = RunSetting(s, p.leaky[job.f_index], p.split.train,
                                       p.split.control, cfg.alpha, cfg.control_rate_cut, 1);
    LinearityRow& row = rows[j];
    row.attack = std::string(ToString(job.kind));
    row.f_l = cfg.f_l[job.f_index];
    row.aux = aux;
    row.seed = seed;
    row.ok = r.ok;
    row.error = r.error;
    if (r.ok) {
      const RiskAssessment& ra = r.assessment;
      row.risk = ra.risk.value;
      row.risk_raw = ra.risk.raw;
      row.delta = ra.risk.delta;
      row.ci_low = ra.risk.ci.first;
      row.ci_high = ra.risk.ci.second;
      row.r_train = ra.train.rate;
      row.r_control = ra.control.rate;
      row.r_naive = ra.naive.rate;
      row.excluded = ra.risk.is_excluded();
    }
  });
  return rows;
}

void WriteLinearityCsv(const std::vector<LinearityRow>& rows, std::ostream& out) {
  out << "attack,f_l,aux,seed,status,risk,ci_low,ci_high,risk_raw,delta,r_train,r_control,"
         "r_naive,excluded\n";
  for (const auto& r : rows) {
    out << r.attack << ',' << Number(r.f_l) << ',' << r.aux << ',' << r.seed << ','
        << (r.ok ? "ok" : "error") << ',' << Number(r.risk) << ',' << Number(r.ci_low) << ','
        << Number(r.ci_high) << ',' << Number(r.risk_raw) << ',' << Number(r.delta) << ','
        << Number(r.r_train) << ',' << Number(r.r_control) << ',' << Number(r.r_naive) << ','
        << (r.excluded ? "true" : "false") << '\n';
  }
}

}  // namespace synthrisk
