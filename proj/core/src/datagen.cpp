#include "semtab/datagen.hpp"

#include "semtab/errors.hpp"
#include "semtab/heuristics.hpp"
#include "util.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace semtab {

namespace {

// std::uniform_int_distribution is implementation-defined; this is not, so
// seeded output is identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % n);
  while (true) {
    const std::uint64_t x = rng();
    if (x < limit) {
      return x % n;
    }
  }
}

// k distinct picks from `pool` (partial Fisher-Yates), returned in pool order.
template <typename T>
std::vector<T> choose(std::vector<T> pool, std::size_t k, std::mt19937_64& rng) {
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + uniform_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

} // namespace

std::string_view to_string(PremiseVariant variant) noexcept {
  switch (variant) {
  case PremiseVariant::cell_only:
    return "cell_only";
  case PremiseVariant::cell_row:
    return "cell_row";
  case PremiseVariant::cell_col:
    return "cell_col";
  case PremiseVariant::cell_row_col:
    return "cell_row_col";
  }
  return "?";
}

std::optional<PremiseVariant> parse_premise_variant(std::string_view name) noexcept {
  for (const auto v : {PremiseVariant::cell_only, PremiseVariant::cell_row,
                       PremiseVariant::cell_col, PremiseVariant::cell_row_col}) {
    if (name == to_string(v)) {
      return v;
    }
  }
  return std::nullopt;
}

std::vector<NliSample> make_nli_samples(const NormalizedTable& table, const Statement& statement,
                                        const CellMatrix& gold, PremiseVariant variant) {
  if (gold.rows() != table.rows() || gold.cols() != table.cols()) {
    throw DataError("gold matrix " + std::to_string(gold.rows()) + "x" +
                    std::to_string(gold.cols()) + " does not match table '" + table.table_id() +
                    "' (" + std::to_string(table.rows()) + "x" + std::to_string(table.cols()) +
                    ") for statement '" + statement.statement_id + "'");
  }
  const bool with_row = variant == PremiseVariant::cell_row || variant == PremiseVariant::cell_row_col;
  const bool with_col = variant == PremiseVariant::cell_col || variant == PremiseVariant::cell_row_col;

  std::vector<NliSample> out;
  out.reserve((table.rows() - 1) * table.cols());
  for (std::size_t r = 1; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.cols(); ++c) {
      std::string premise;
      auto add = [&premise](std::string_view part) {
        part = detail::trim(part);
        if (part.empty()) {
          return;
        }
        if (!premise.empty()) {
          premise += ' ';
        }
        premise += part;
      };
      if (with_row && c != 0) {
        add(table.at(r, 0));
      }
      add(table.at(r, c));
      if (with_col) {
        add(table.at(0, c));
      }
      if (premise.empty()) {
        continue;
      }
      out.push_back(NliSample{std::move(premise), statement.text, gold.relevant(r, c) ? 1 : 0,
                              table.table_id(), statement.statement_id, r, c});
    }
  }
  return out;
}

BalancedSample sample_balanced(const std::vector<NliSample>& samples, double fraction,
                               std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("sampling fraction must lie in (0, 1]");
  }
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    (samples[i].label == 1 ? positives : negatives).push_back(i);
  }

  auto target = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(samples.size())));
  target -= target % 2;
  std::size_t half = target / 2;

  BalancedSample out;
  const auto available = std::min(positives.size(), negatives.size());
  if (half > available) {
    spdlog::warn("balanced sampling wanted {} per class but only {} relevant / {} irrelevant "
                 "samples exist; keeping {}",
                 half, positives.size(), negatives.size(), 2 * available);
    half = available;
    out.class_exhausted = true;
  }

  std::mt19937_64 rng(seed);
  auto picked = choose(std::move(positives), half, rng);
  const auto picked_neg = choose(std::move(negatives), half, rng);
  picked.insert(picked.end(), picked_neg.begin(), picked_neg.end());
  std::sort(picked.begin(), picked.end());

  out.samples.reserve(picked.size());
  for (const auto i : picked) {
    out.samples.push_back(samples[i]);
  }
  return out;
}

StatementCorpus group_labeled(const std::vector<Statement>& statements, std::size_t* dropped) {
  StatementCorpus corpus;
  std::size_t removed = 0;
  for (const auto& s : statements) {
    if (!s.label) {
      ++removed;
      continue;
    }
    corpus[s.table_id].push_back(s);
  }
  if (dropped != nullptr) {
    *dropped = removed;
  }
  return corpus;
}

std::vector<AugmentedStatement> augment_unknown(const std::string& target_table_id,
                                                const StatementCorpus& corpus, std::size_t count,
                                                std::uint64_t seed) {
  if (count % 2 != 0) {
    throw ConfigError("augmentation count must be even, got " + std::to_string(count));
  }
  std::vector<const Statement*> entailed;
  std::vector<const Statement*> refuted;
  for (const auto& [table_id, statements] : corpus) {
    if (table_id == target_table_id) {
      continue;
    }
    for (const auto& s : statements) {
      if (s.label == Label::entailed) {
        entailed.push_back(&s);
      } else if (s.label == Label::refuted) {
        refuted.push_back(&s);
      }
    }
  }
  const auto half = count / 2;
  if (entailed.size() < half || refuted.size() < half) {
    throw DataError("cannot draw " + std::to_string(half) + " entailed and " +
                    std::to_string(half) + " refuted statements for table '" + target_table_id +
                    "': other tables offer " + std::to_string(entailed.size()) + " entailed and " +
                    std::to_string(refuted.size()) + " refuted");
  }

  std::vector<std::size_t> e_idx(entailed.size());
  std::vector<std::size_t> r_idx(refuted.size());
  std::iota(e_idx.begin(), e_idx.end(), std::size_t{0});
  std::iota(r_idx.begin(), r_idx.end(), std::size_t{0});

  std::mt19937_64 rng(seed);
  const auto e_pick = choose(std::move(e_idx), half, rng);
  const auto r_pick = choose(std::move(r_idx), half, rng);

  std::vector<AugmentedStatement> out;
  out.reserve(count);
  auto emit = [&](const Statement& src) {
    AugmentedStatement a;
    a.statement.table_id = target_table_id;
    a.statement.statement_id = "aug:" + src.table_id + ":" + src.statement_id;
    a.statement.text = src.text;
    a.statement.label = Label::unknown;
    a.source_table_id = src.table_id;
    a.source_statement_id = src.statement_id;
    a.source_label = *src.label;
    out.push_back(std::move(a));
  };
  for (const auto i : e_pick) {
    emit(*entailed[i]);
  }
  for (const auto i : r_pick) {
    emit(*refuted[i]);
  }
  return out;
}

std::size_t column_token_count(const NormalizedTable& table, std::size_t col) {
  std::size_t count = 0;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const auto& cell = table.at(r, col);
    bool in_token = false;
    for (const char ch : cell) {
      const bool space = ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v';
      if (!space && !in_token) {
        ++count;
      }
      in_token = !space;
    }
  }
  return count;
}

NormalizedTable hem_prune(const NormalizedTable& table, const Statement& statement,
                          std::size_t token_budget) {
  const auto cols = table.cols();
  std::vector<std::size_t> sizes(cols);
  std::vector<double> relevance(cols);
  const auto sim = Similarity::binary_match();
  const auto tokens = statement_tokens(statement.text);
  for (std::size_t c = 0; c < cols; ++c) {
    sizes[c] = column_token_count(table, c);
    std::string joined;
    for (std::size_t r = 0; r < table.rows(); ++r) {
      joined += table.at(r, c);
      joined += ' ';
    }
    relevance[c] = cell_score(sim, tokens, joined);
  }
  if (std::none_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s <= token_budget; })) {
    throw ConfigError("token budget " + std::to_string(token_budget) +
                      " is smaller than every column of table '" + table.table_id() + "'");
  }

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return relevance[a] > relevance[b]; });

  std::vector<std::size_t> kept;
  std::size_t used = 0;
  for (const auto c : order) {
    if (used + sizes[c] <= token_budget) {
      kept.push_back(c);
      used += sizes[c];
    }
  }
  std::sort(kept.begin(), kept.end());
  return table.select_columns(kept);
}

std::uint64_t table_seed(std::uint64_t seed, std::string_view table_id) noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char ch : table_id) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return seed + h;
}

} // namespace semtab
