// Copyright 2026 The fairasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"

#include <algorithm>
#include <functional>

namespace fairasr::oracle {
namespace {

int rank(EditKind k) {
  switch (k) {
    case EditKind::kMatch: return 0;
    case EditKind::kSubstitution: return 1;
    case EditKind::kDeletion: return 2;
    case EditKind::kInsertion: return 3;
  }
  return 4;
}

std::size_t cost_of(const std::vector<EditOp>& path) {
  std::size_t c = 0;
  for (const auto& op : path) c += op.kind != EditKind::kMatch;
  return c;
}

std::size_t subs_of(const std::vector<EditOp>& path) {
  std::size_t s = 0;
  for (const auto& op : path) s += op.kind == EditKind::kSubstitution;
  return s;
}

bool preferred(const std::vector<EditOp>& x, const std::vector<EditOp>& y) {
  if (cost_of(x) != cost_of(y)) return cost_of(x) < cost_of(y);
  if (subs_of(x) != subs_of(y)) return subs_of(x) > subs_of(y);
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                      [](const EditOp& p, const EditOp& q) {
                                        return rank(p.kind) < rank(q.kind);
                                      });
}

Counts tally(const std::vector<EditOp>& ops, std::size_t ref_words) {
  Counts c;
  c.ref_words = ref_words;
  for (const auto& op : ops) {
    if (op.kind == EditKind::kSubstitution) ++c.sub;
    if (op.kind == EditKind::kDeletion) ++c.del;
    if (op.kind == EditKind::kInsertion) ++c.ins;
  }
  return c;
}

void add(Counts& into, const Counts& c) {
  into.sub += c.sub;
  into.del += c.del;
  into.ins += c.ins;
  into.ref_words += c.ref_words;
}

bool occurs_at(const TokenSeq& ref, const std::vector<std::string>& gram, std::size_t pos) {
  if (pos + gram.size() > ref.size()) return false;
  for (std::size_t k = 0; k < gram.size(); ++k) {
    if (ref[pos + k] != gram[k]) return false;
  }
  return true;
}

std::optional<std::size_t> first_occurrence(const TokenSeq& ref, const std::vector<std::string>& gram) {
  for (std::size_t p = 0; p + gram.size() <= ref.size(); ++p) {
    if (occurs_at(ref, gram, p)) return p;
  }
  return std::nullopt;
}

std::vector<std::vector<std::string>> distinct_grams(const Corpus& corpus,
                                                     const std::set<std::size_t>& orders) {
  std::vector<std::vector<std::string>> out;
  for (const auto& rec : corpus) {
    for (std::size_t n : orders) {
      for (std::size_t p = 0; p + n <= rec.reference.size(); ++p) {
        std::vector<std::string> g(rec.reference.begin() + static_cast<std::ptrdiff_t>(p),
                                   rec.reference.begin() + static_cast<std::ptrdiff_t>(p + n));
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
      }
    }
  }
  return out;
}

Counts span_counts(const UtteranceRecord& rec, const std::string& system,
                   const std::vector<std::string>& gram) {
  const TokenSeq& hyp = rec.hypotheses.at(system);
  const auto path = best_edit_path(rec.reference, hyp);
  const std::size_t s = *first_occurrence(rec.reference, gram);
  const std::size_t e = s + gram.size() - 1;
  std::size_t first = path.size(), last = 0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (path[k].ref_index == s) first = k;
    if (path[k].ref_index == e) last = k;
  }
  std::vector<EditOp> kept(path.begin() + static_cast<std::ptrdiff_t>(first),
                           path.begin() + static_cast<std::ptrdiff_t>(last + 1));
  return tally(kept, gram.size());
}

}  // namespace

std::size_t levenshtein(const TokenSeq& a, const TokenSeq& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<std::vector<EditOp>> all_edit_paths(const TokenSeq& ref, const TokenSeq& hyp) {
  std::vector<std::vector<EditOp>> out;
  std::vector<EditOp> path;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t j) {
    if (i == ref.size() && j == hyp.size()) {
      out.push_back(path);
      return;
    }
    if (i < ref.size() && j < hyp.size()) {
      path.push_back({ref[i] == hyp[j] ? EditKind::kMatch : EditKind::kSubstitution, i, j});
      walk(i + 1, j + 1);
      path.pop_back();
    }
    if (i < ref.size()) {
      path.push_back({EditKind::kDeletion, i, std::nullopt});
      walk(i + 1, j);
      path.pop_back();
    }
    if (j < hyp.size()) {
      path.push_back({EditKind::kInsertion, std::nullopt, j});
      walk(i, j + 1);
      path.pop_back();
    }
  };
  walk(0, 0);
  return out;
}

std::vector<EditOp> pick_preferred(const std::vector<std::vector<EditOp>>& paths) {
  return *std::min_element(paths.begin(), paths.end(), preferred);
}

std::vector<EditOp> best_edit_path(const TokenSeq& ref, const TokenSeq& hyp) {
  // Depth-first in reading order, so among equally ranked complete paths the
  // first one found is the lexicographically smallest. Branches that cannot
  // strictly beat the best so far are cut.
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<EditOp> best, path;
  std::size_t best_cost = n + m + 1, best_subs = 0;
  std::function<void(std::size_t, std::size_t, std::size_t, std::size_t)> walk =
      [&](std::size_t i, std::size_t j, std::size_t cost, std::size_t subs) {
        const std::size_t rn = n - i, rm = m - j;
        const std::size_t lb = cost + (rn > rm ? rn - rm : rm - rn);
        if (lb > best_cost) return;
        if (lb == best_cost && subs + std::min(rn, rm) <= best_subs) return;
        if (rn == 0 && rm == 0) {
          best = path;
          best_cost = cost;
          best_subs = subs;
          return;
        }
        if (rn > 0 && rm > 0) {
          const bool same = ref[i] == hyp[j];
          path.push_back({same ? EditKind::kMatch : EditKind::kSubstitution, i, j});
          walk(i + 1, j + 1, cost + !same, subs + !same);
          path.pop_back();
        }
        if (rn > 0) {
          path.push_back({EditKind::kDeletion, i, std::nullopt});
          walk(i + 1, j, cost + 1, subs);
          path.pop_back();
        }
        if (rm > 0) {
          path.push_back({EditKind::kInsertion, std::nullopt, j});
          walk(i, j + 1, cost + 1, subs);
          path.pop_back();
        }
      };
  walk(0, 0, 0, 0);
  return best;
}

std::string alignment_violation(const Alignment& alignment) {
  std::size_t next_ref = 0, next_hyp = 0;
  for (std::size_t k = 0; k < alignment.ops.size(); ++k) {
    const auto& op = alignment.ops[k];
    const bool needs_ref = op.kind != EditKind::kInsertion;
    const bool needs_hyp = op.kind != EditKind::kDeletion;
    if (op.ref_index.has_value() != needs_ref || op.hyp_index.has_value() != needs_hyp) {
      return "op " + std::to_string(k) + " carries the wrong indices";
    }
    if (needs_ref && *op.ref_index != next_ref++) return "ref index out of order at op " + std::to_string(k);
    if (needs_hyp && *op.hyp_index != next_hyp++) return "hyp index out of order at op " + std::to_string(k);
  }
  if (next_ref != alignment.ref_len) return "ref indices do not cover the reference";
  if (next_hyp != alignment.hyp_len) return "hyp indices do not cover the hypothesis";
  return {};
}

MatchedCounts matched_counts(const Corpus& a, const Corpus& b, const std::string& system,
                             const std::set<std::size_t>& orders) {
  MatchedCounts out;
  const auto grams_a = distinct_grams(a, orders);
  const auto grams_b = distinct_grams(b, orders);
  for (const auto& gram : grams_a) {
    if (std::find(grams_b.begin(), grams_b.end(), gram) == grams_b.end()) continue;
    std::vector<std::size_t> ua, ub;
    for (std::size_t u = 0; u < a.size(); ++u) {
      if (first_occurrence(a[u].reference, gram)) ua.push_back(u);
    }
    for (std::size_t u = 0; u < b.size(); ++u) {
      if (first_occurrence(b[u].reference, gram)) ub.push_back(u);
    }
    const std::size_t p = std::min(ua.size(), ub.size());
    for (std::size_t k = 0; k < p; ++k) {
      add(out.a, span_counts(a[ua[k]], system, gram));
      add(out.b, span_counts(b[ub[k]], system, gram));
    }
    out.pairs += p;
    out.unique_ngrams += 1;
  }
  return out;
}

}  // namespace fairasr::oracle
