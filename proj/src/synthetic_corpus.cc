// Copyright 2026 The ft2ra Authors.
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

#include "ft2ra/synthetic_corpus.h"

#include <random>
#include <string_view>

#include "ft2ra/tokenizer.h"

namespace ft2ra {
namespace {

using Pool = std::vector<std::string_view>;

const Pool kVars = {"x",     "y",      "i",     "n",     "data",  "items",
                    "value", "result", "key",   "count", "name",  "path",
                    "line",  "text",   "node",  "item",  "total", "size",
                    "buf",   "obj",    "config", "output", "values", "entry",
                    "record", "parts"};
const Pool kFuncs = {"process", "load",    "save",     "parse",   "compute",
                     "update",  "render",  "build",    "handle",  "read",
                     "write",   "validate", "convert", "collect", "merge",
                     "transform"};
const Pool kMethods = {"append", "get",   "items",   "keys",   "values",
                       "split",  "strip", "join",    "format", "update",
                       "pop",    "add",   "extend",  "copy",   "lower",
                       "replace"};
const Pool kModules = {"os",   "sys",    "json",        "re",       "math",
                       "time", "random", "collections", "itertools",
                       "functools"};
const Pool kClasses = {"Parser", "Loader", "Handler", "Worker", "Cache",
                       "Builder"};
const Pool kNumbers = {"0", "1", "2", "10", "100", "3.5"};
const Pool kStrings = {"\"ok\"", "\"error\"", "\"r\"", "\"w\"", "'%s'",
                       "\"done\""};

// Project-specific vocabulary, never used by the general corpus.
const Pool kReceivers = {"billing",  "ledger_db", "tenant_cache",
                         "shipping", "quota_svc", "hooks",
                         "auth",     "catalog",   "payouts",
                         "audit"};
const Pool kVerbs = {"fetch", "store", "sync",  "emit",  "resolve",
                     "queue", "audit", "patch", "lock",  "expire"};
const Pool kNouns = {"invoice", "ledger", "tenant", "shipment", "quota",
                     "webhook", "token",  "catalog", "payout",  "receipt"};
const Pool kProjectArgs = {"invoice_id", "tenant_id", "req", "payload",
                           "ctx",        "batch",     "account", "region"};
const Pool kProjectKwargs = {"timeout", "retries", "dry_run", "page_size"};
const Pool kResults = {"resp", "rows", "status", "record_set", "ack"};

class Generator {
 public:
  Generator(const SyntheticCorpusConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t p = 0; p < cfg.num_patterns; ++p) {
      // Each pattern is a fixed call line with its own receiver, API name,
      // arguments and result variable.
      const std::string api = std::string(Pick(kVerbs)) + "_" +
                              std::string(Pick(kNouns));
      std::string line = std::string(Pick(kResults)) + " = self." +
                         std::string(Pick(kReceivers)) + "." + api + "(" +
                         std::string(Pick(kProjectArgs));
      if (coin(rng_)) line += ", " + std::string(Pick(kProjectArgs));
      line += ", " + std::string(Pick(kProjectKwargs)) + "=" +
              std::string(Pick(kNumbers)) + ")";
      patterns_.push_back(line);
    }
  }

  std::string File(bool domain) {
    lines_.clear();
    const int imports = Uniform(1, 3);
    for (int i = 0; i < imports; ++i) {
      if (domain && Chance(cfg_.convention_rate)) {
        Emit(0, "from project import " + std::string(Pick(kReceivers)));
      } else {
        Emit(0, "import " + std::string(Pick(kModules)));
      }
    }
    Emit(0, "");
    const int blocks = Uniform(2, 5);
    for (int b = 0; b < blocks; ++b) {
      if (Chance(0.3)) {
        Class(domain);
      } else {
        Function(0, domain);
      }
      Emit(0, "");
    }
    std::string out;
    for (const auto& l : lines_) out += l + "\n";
    return out;
  }

  const std::vector<std::string>& patterns() const { return patterns_; }

 private:
  int Uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool Chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::string_view Pick(const Pool& pool) {
    return pool[static_cast<std::size_t>(
        Uniform(0, static_cast<int>(pool.size()) - 1))];
  }
  std::string Pick(const std::vector<std::string>& pool) {
    return pool[static_cast<std::size_t>(
        Uniform(0, static_cast<int>(pool.size()) - 1))];
  }

  void Emit(int indent, const std::string& line) {
    lines_.push_back(std::string(static_cast<std::size_t>(indent) * 4, ' ') +
                     line);
  }

  void Class(bool domain) {
    Emit(0, "class " + std::string(Pick(kClasses)) + "(object):");
    std::string arg(Pick(kVars));
    Emit(1, "def __init__(self, " + arg + "):");
    Emit(2, "self." + arg + " = " + arg);
    if (domain && Chance(cfg_.convention_rate)) {
      Emit(2, "self." + std::string(Pick(kReceivers)) + " = project." +
                  std::string(Pick(kReceivers)) + "()");
    }
    Emit(0, "");
    Function(1, domain, /*method=*/true);
  }

  void Function(int indent, bool domain, bool method = false) {
    locals_ = {std::string(Pick(kVars)), std::string(Pick(kVars)),
               std::string(Pick(kVars))};
    std::string sig = "def " + std::string(Pick(kFuncs)) + "(";
    if (method || domain) sig += "self, ";
    sig += locals_[0] + ", " + locals_[1] + "):";
    Emit(indent, sig);
    const int statements = Uniform(3, 8);
    for (int s = 0; s < statements; ++s) Statement(indent + 1, domain);
    Emit(indent + 1, "return " + Local());
  }

  std::string Local() { return Pick(locals_); }

  void Statement(int indent, bool domain) {
    if (domain && Chance(cfg_.pattern_rate)) {
      const std::string& line = Pick(patterns_);
      Emit(indent, line);
      if (Chance(0.3)) {
        const std::string result = line.substr(0, line.find(' '));
        Emit(indent, "if not " + result + ".ok:");
        Emit(indent + 1, "raise ProjectError(" + std::string(Pick(kStrings)) +
                             ")");
      }
      return;
    }
    const bool conv = domain && Chance(cfg_.convention_rate);
    switch (Uniform(0, 12)) {
      case 0:
        Emit(indent, Local() + " = " + Local() + "." +
                         std::string(conv ? "get_or_raise" : Pick(kMethods)) +
                         "(" + Local() + ")");
        break;
      case 1:
        Emit(indent, Local() + " = " + std::string(Pick(kFuncs)) + "(" +
                         Local() + ", " + Local() + ")");
        break;
      case 2:
        Emit(indent, "if " + Local() + (conv ? " is MISSING:" : " is None:"));
        Emit(indent + 1, conv ? "return EMPTY_RESULT" : "return None");
        break;
      case 3: {
        const std::string v = Local();
        if (conv) {
          Emit(indent, "for " + v + " in self.iter_batches(" + Local() + "):");
        } else {
          Emit(indent, "for " + v + " in range(" +
                           std::string(Pick(kNumbers)) + "):");
        }
        Emit(indent + 1, Local() + ".append(" + v + ")");
        break;
      }
      case 4:
        Emit(indent, "for k, v in " + Local() + ".items():");
        Emit(indent + 1, Local() + "[k] = v");
        break;
      case 5:
        Emit(indent, Local() + " += " + std::string(Pick(kNumbers)));
        break;
      case 6:
        Emit(indent, std::string(conv ? "log.info(" : "print(") +
                         std::string(Pick(kStrings)) + ", " + Local() + ")");
        break;
      case 7:
        Emit(indent, Local() + (Chance(0.5) ? " = []" : " = {}"));
        break;
      case 8:
        Emit(indent, "with open(" + Local() + ", " +
                         std::string(Pick(kStrings)) + ") as f:");
        Emit(indent + 1, Local() + " = f.read()");
        break;
      case 9:
        Emit(indent, "try:");
        Emit(indent + 1, Local() + " = " + std::string(Pick(kFuncs)) + "(" +
                             Local() + ")");
        Emit(indent, conv ? "except ProjectError:" : "except ValueError:");
        Emit(indent + 1, "pass");
        break;
      case 10:
        Emit(indent, "self." + Local() + " = " + Local());
        break;
      case 11:
        Emit(indent, "assert " + Local() + " == " +
                         std::string(Pick(kNumbers)));
        break;
      default:
        Emit(indent, std::string(conv ? "raise ProjectError(" :
                                        "raise ValueError(") +
                         std::string(Pick(kStrings)) + ")");
        break;
    }
  }

  const SyntheticCorpusConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<std::string> patterns_;
  std::vector<std::string> lines_;
  std::vector<std::string> locals_;
};

}  // namespace

SyntheticCorpora GenerateSyntheticCorpora(const SyntheticCorpusConfig& cfg) {
  Generator gen(cfg);
  SyntheticCorpora out;
  out.patterns = gen.patterns();
  std::size_t tokens = 0;
  while (tokens < cfg.base_tokens) {
    std::string file = gen.File(/*domain=*/false);
    tokens += SplitTokens(file).size();
    out.base += file;
  }
  for (std::size_t f = 0; f < cfg.domain_train_files; ++f) {
    out.domain_train += gen.File(/*domain=*/true);
  }
  for (std::size_t f = 0; f < cfg.domain_test_files; ++f) {
    out.domain_test += gen.File(/*domain=*/true);
  }
  return out;
}

}  // namespace ft2ra
