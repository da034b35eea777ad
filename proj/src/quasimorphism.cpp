#include "ggbraid/quasimorphism.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "ggbraid/signature.hpp"

namespace gg {

QuasiMorphism::QuasiMorphism(std::string name, Domain domain, Evaluator eval)
    : name_(std::move(name)), domain_(domain), eval_(std::move(eval)) {}

QuasiMorphism& QuasiMorphism::set_defect_bound(std::optional<mpq_class> d, bool assumed) {
  defect_bound_ = std::move(d);
  defect_assumed_ = defect_bound_.has_value() && assumed;
  return *this;
}

QuasiMorphism& QuasiMorphism::set_homomorphism(bool h) {
  homomorphism_ = h;
  if (h) {
    defect_bound_ = mpq_class(0);
    defect_assumed_ = false;
    homogeneous_ = true;
    hom_error_ = mpq_class(0);
  }
  return *this;
}

QuasiMorphism& QuasiMorphism::set_homogeneous(bool h) {
  homogeneous_ = h;
  if (h) hom_error_ = mpq_class(0);
  return *this;
}

QuasiMorphism& QuasiMorphism::set_homogenization_error(std::optional<mpq_class> e) {
  hom_error_ = std::move(e);
  return *this;
}

QuasiMorphism& QuasiMorphism::rename(std::string name) {
  name_ = std::move(name);
  return *this;
}

mpq_class QuasiMorphism::operator()(const BraidWord& a) const {
  if (domain_ == Domain::Pure && !is_pure(a))
    throw DomainError(name_ + " is defined on pure braids only; " + a.to_string() + " is not pure");
  return eval_(a);
}

// ---------------------------------------------------------------- primitives

int pairwise_linking(const BraidWord& a, int i, int j) {
  const int n = a.strands();
  if (i < 1 || j <= i || j > n)
    throw std::invalid_argument("pairwise_linking: need 1 <= i < j <= n");
  if (!is_pure(a)) throw DomainError("pairwise_linking needs a pure braid; got " + a.to_string());
  std::vector<int> at(static_cast<std::size_t>(n));  // position -> starting strand
  for (int q = 0; q < n; ++q) at[static_cast<std::size_t>(q)] = q;
  int twice = 0;
  for (int l : a.letters()) {
    auto k = static_cast<std::size_t>(std::abs(l));
    int s1 = at[k - 1], s2 = at[k];
    if ((s1 == i - 1 && s2 == j - 1) || (s1 == j - 1 && s2 == i - 1)) twice += l > 0 ? 1 : -1;
    std::swap(at[k - 1], at[k]);
  }
  return twice / 2;
}

int pairwise_linking(const PureBraid& a, int i, int j) { return pairwise_linking(a.word(), i, j); }

QuasiMorphism exponent_sum_qm() {
  QuasiMorphism q("lk", Domain::Full, [](const BraidWord& a) { return mpq_class(exponent_sum(a)); });
  q.set_homomorphism(true);
  return q;
}

QuasiMorphism linking_qm(int i, int j) {
  if (i < 1 || j <= i) throw std::invalid_argument("lk:i,j needs 1 <= i < j");
  QuasiMorphism q("lk:" + std::to_string(i) + "," + std::to_string(j), Domain::Pure,
                  [i, j](const BraidWord& a) {
                    if (j > a.strands())
                      throw std::invalid_argument("lk:" + std::to_string(i) + "," + std::to_string(j) +
                                                  " on a braid with " + std::to_string(a.strands()) + " strands");
                    return mpq_class(pairwise_linking(a, i, j));
                  });
  q.set_homomorphism(true);
  return q;
}

QuasiMorphism signature_qm(std::optional<mpq_class> assumed_defect) {
  QuasiMorphism q("signature", Domain::Full, [](const BraidWord& a) { return mpq_class(signature(a)); });
  q.set_defect_bound(std::move(assumed_defect), true);
  return q;
}

QuasiMorphism null_qm() {
  QuasiMorphism q("null", Domain::Full, [](const BraidWord&) { return mpq_class(0); });
  q.set_homomorphism(true);
  return q;
}

QuasiMorphism restrict(const QuasiMorphism& phi) {
  QuasiMorphism q(phi.name(), Domain::Pure, [phi](const BraidWord& a) { return phi.eval_unchecked(a); });
  q.set_defect_bound(phi.defect_bound(), phi.defect_assumed());
  q.set_homogeneous(phi.is_homogeneous());
  q.set_homogenization_error(phi.homogenization_error());
  if (phi.is_homomorphism()) q.set_homomorphism(true);
  return q;
}

QuasiMorphism transfer(const QuasiMorphism& phi, std::shared_ptr<const CosetTable> table) {
  if (phi.domain() != Domain::Pure) throw std::invalid_argument("transfer needs a quasi-morphism on P_n");
  if (!table) throw std::invalid_argument("transfer needs a coset table");
  std::vector<BraidWord> inv;
  for (std::size_t r = 0; r < table->size(); ++r) inv.push_back(inverse(table->rep_by_rank(r)));
  QuasiMorphism q("trans:" + phi.name(), Domain::Full,
                  [phi, table, inv = std::move(inv)](const BraidWord& b) {
                    if (b.strands() != table->strands())
                      throw std::invalid_argument("transfer table has " + std::to_string(table->strands()) +
                                                  " strands, braid has " + std::to_string(b.strands()));
                    mpq_class sum = 0;
                    for (std::size_t r = 0; r < table->size(); ++r) {
                      BraidWord bg = compose(b, table->rep_by_rank(r));
                      std::size_t r2 = permutation_of(bg).rank();
                      sum += phi.eval_unchecked(compose(inv[r2], bg));
                    }
                    return mpq_class(sum / static_cast<long>(table->size()));
                  });
  q.set_defect_bound(phi.defect_bound(), phi.defect_assumed());
  if (phi.is_homomorphism()) q.set_homomorphism(true);
  return q;
}

QuasiMorphism homogenized_qm(const QuasiMorphism& phi, int p) {
  if (p < 1) throw std::invalid_argument("hom: power must be >= 1");
  QuasiMorphism q("hom:" + phi.name() + ":" + std::to_string(p), phi.domain(),
                  [phi, p](const BraidWord& a) { return mpq_class(phi.eval_unchecked(power(a, p)) / p); });
  if (phi.is_homomorphism()) {
    q.set_homomorphism(true);
  } else if (phi.is_homogeneous()) {
    q.set_defect_bound(phi.defect_bound(), phi.defect_assumed());
    q.set_homogeneous(true);
  } else if (phi.defect_bound()) {
    const mpq_class& d = *phi.defect_bound();
    q.set_defect_bound(mpq_class(2 * d + 3 * d / p), phi.defect_assumed());
    q.set_homogenization_error(mpq_class(d / p));
  }
  return q;
}

QuasiMorphism linear_combination(const std::vector<std::pair<mpq_class, QuasiMorphism>>& terms) {
  if (terms.size() == 1 && terms[0].first == 1) return terms[0].second;
  Domain dom = Domain::Full;
  bool hom = true, homog = true, assumed = false;
  std::optional<mpq_class> defect = mpq_class(0), err = mpq_class(0);
  std::string name;
  for (const auto& [c, phi] : terms) {
    if (phi.domain() == Domain::Pure) dom = Domain::Pure;
    hom = hom && phi.is_homomorphism();
    homog = homog && phi.is_homogeneous();
    assumed = assumed || phi.defect_assumed();
    if (defect && phi.defect_bound())
      *defect += abs(c) * *phi.defect_bound();
    else
      defect.reset();
    if (err && phi.homogenization_error())
      *err += abs(c) * *phi.homogenization_error();
    else
      err.reset();
    std::string piece = (c == 1 ? "" : c == -1 ? "-" : c.get_str() + "*") + phi.name();
    if (!name.empty() && piece[0] != '-') name += "+";
    name += piece;
  }
  QuasiMorphism q(name.empty() ? "null" : name, dom, [terms](const BraidWord& a) {
    mpq_class s = 0;
    for (const auto& [c, phi] : terms) s += c * phi.eval_unchecked(a);
    return s;
  });
  q.set_defect_bound(defect, assumed);
  q.set_homogenization_error(err);
  if (homog) q.set_homogeneous(true);
  if (hom) q.set_homomorphism(true);
  return q;
}

// -------------------------------------------------------------------- parser

namespace {

class QmParser {
 public:
  QmParser(std::string_view text, const QmContext& ctx) : s_(text), ctx_(ctx) {}

  QuasiMorphism parse() {
    auto q = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("quasi-morphism '" + std::string(s_) + "': " + msg + " at position " +
                                std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  QuasiMorphism expr() {
    std::vector<std::pair<mpq_class, QuasiMorphism>> terms;
    mpq_class sign = 1;
    if (eat("-")) sign = -1;
    else eat("+");
    while (true) {
      auto [c, q] = term();
      terms.emplace_back(sign * c, std::move(q));
      if (eat("+")) sign = 1;
      else if (eat("-")) sign = -1;
      else break;
    }
    return linear_combination(terms);
  }

  std::pair<mpq_class, QuasiMorphism> term() {
    skip();
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == '/'))
        ++pos_;
      mpq_class c = parse_rational(s_.substr(start, pos_ - start));
      if (!eat("*")) fail("expected '*' after coefficient");
      return {c, factor()};
    }
    return {mpq_class(1), factor()};
  }

  mpq_class parse_rational(std::string_view t) {
    std::string str(t);
    if (auto dot = str.find('.'); dot != std::string::npos) {
      std::string digits = str.substr(0, dot) + str.substr(dot + 1);
      mpz_class den = 1;
      for (std::size_t k = dot + 1; k < str.size(); ++k) den *= 10;
      if (digits.empty()) fail("bad coefficient");
      mpq_class q(mpz_class(digits), den);
      q.canonicalize();
      return q;
    }
    mpq_class q;
    if (q.set_str(str, 10) != 0) fail("bad coefficient '" + str + "'");
    q.canonicalize();
    return q;
  }

  QuasiMorphism factor() {
    skip();
    if (eat("(")) {
      auto q = expr();
      if (!eat(")")) fail("expected ')'");
      return q;
    }
    if (eat("trans:")) {
      auto inner = factor();
      if (inner.domain() == Domain::Full) inner = restrict(inner);
      return transfer(inner, std::make_shared<const CosetTable>(
                                 coset_representatives(ctx_.strands, ctx_.max_coset_strands)));
    }
    if (eat("hom:")) {
      auto inner = factor();
      if (!eat(":")) fail("expected ':<p>' after hom inner name");
      long p = integer();
      if (p < 1 || p > 1 << 20) fail("hom power out of range");
      return homogenized_qm(inner, static_cast<int>(p));
    }
    if (eat("signature")) {
      mpq_class d = ctx_.signature_defect ? *ctx_.signature_defect : mpq_class(ctx_.strands);
      return signature_qm(d);
    }
    if (eat("null")) return null_qm();
    if (eat("lk")) {
      if (eat(":")) {
        long i = integer();
        if (!eat(",")) fail("expected ',' in lk:i,j");
        long j = integer();
        if (i < 1 || j <= i) fail("lk:i,j needs 1 <= i < j");
        return linking_qm(static_cast<int>(i), static_cast<int>(j));
      }
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        if (pos_ + 1 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))
          fail("expected two digits in lkIJ");
        int i = s_[pos_] - '0', j = s_[pos_ + 1] - '0';
        pos_ += 2;
        if (i < 1 || j <= i) fail("lkIJ needs 1 <= I < J");
        return linking_qm(i, j).rename("lk" + std::to_string(i) + std::to_string(j));
      }
      return exponent_sum_qm();
    }
    fail("unknown quasi-morphism name");
  }

  std::string_view s_;
  const QmContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

QuasiMorphism parse_qm(std::string_view text, const QmContext& ctx) {
  auto q = QmParser(text, ctx).parse();
  return q;
}

// ---------------------------------------------------------------- operations

HomogenizeResult homogenize(const QuasiMorphism& phi, const BraidWord& a, int p_max, bool require_error) {
  if (p_max < 1) throw std::invalid_argument("homogenize: p_max must be >= 1");
  if (require_error && !phi.defect_bound())
    throw std::invalid_argument("homogenize: " + phi.name() + " has no defect bound, error bar unavailable");
  HomogenizeResult out;
  std::vector<int> ps;
  for (int p = 1; p < p_max; p *= 2) ps.push_back(p);
  ps.push_back(p_max);
  for (int p : ps) out.schedule.emplace_back(p, mpq_class(phi(power(a, p)) / p));
  out.value = out.schedule.back().second;
  if (phi.defect_bound()) out.error = mpq_class(*phi.defect_bound() / p_max);
  return out;
}

BraidWord random_word(int strands, int max_length, std::mt19937_64& rng) {
  if (strands < 2) return BraidWord(strands);
  std::uniform_int_distribution<int> len(0, max_length);
  std::uniform_int_distribution<int> gen(1, strands - 1);
  std::bernoulli_distribution neg(0.5);
  int L = len(rng);
  std::vector<int> letters;
  for (int k = 0; k < L; ++k) {
    int g = gen(rng);
    letters.push_back(neg(rng) ? -g : g);
  }
  return BraidWord(strands, std::move(letters));
}

BraidWord random_pure_word(int strands, int max_length, std::mt19937_64& rng) {
  BraidWord w = random_word(strands, max_length, rng);
  return compose(w, permutation_braid(permutation_of(w).inverse()));
}

mpq_class defect_estimate(const QuasiMorphism& phi, int strands, int trials, int word_length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  mpq_class best = 0;
  const bool pure = phi.domain() == Domain::Pure;
  for (int t = 0; t < trials; ++t) {
    BraidWord a = pure ? random_pure_word(strands, word_length, rng) : random_word(strands, word_length, rng);
    BraidWord b = pure ? random_pure_word(strands, word_length, rng) : random_word(strands, word_length, rng);
    mpq_class d = abs(phi(compose(a, b)) - phi(a) - phi(b));
    if (d > best) best = d;
  }
  return best;
}

mpq_class homogenized_transfer(const QuasiMorphism& phi, const BraidWord& beta, const CosetTable& table) {
  if (beta.strands() != table.strands()) throw std::invalid_argument("homogenized_transfer: strand mismatch");
  const int k = permutation_of(beta).order();
  BraidWord bk = power(beta, k);
  mpq_class sum = 0;
  for (std::size_t r = 0; r < table.size(); ++r) {
    const BraidWord& g = table.rep_by_rank(r);
    sum += phi.eval_unchecked(compose(compose(inverse(g), bk), g));
  }
  return sum / (static_cast<long>(table.size()) * k);
}

std::string to_decimal(const mpq_class& q, int digits) {
  if (q.get_den() == 1) return q.get_num().get_str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, q.get_d());
  return buf;
}

double to_double(const mpq_class& q) { return q.get_d(); }

}  // namespace gg
