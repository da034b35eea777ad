#include "ggbraid/braid.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace gg {

namespace {

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                               text[pos] == '\n' || text[pos] == '\r'))
    ++pos;
}

std::string_view next_token(std::string_view text, std::size_t& pos) {
  skip_space(text, pos);
  std::size_t start = pos;
  while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' &&
         text[pos] != '\n' && text[pos] != '\r')
    ++pos;
  return text.substr(start, pos - start);
}

int parse_int(std::string_view tok, std::size_t at) {
  int value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError("expected integer, got '" + std::string(tok) + "'", at);
  return value;
}

int parse_strands_header(std::string_view text, std::size_t& pos) {
  skip_space(text, pos);
  std::size_t at = pos;
  auto head = next_token(text, pos);
  if (head.substr(0, 2) != "n=")
    throw ParseError("braid text must start with 'n=<strands>'", at);
  int n = parse_int(head.substr(2), at + 2);
  if (n < 1) throw ParseError("strand count must be >= 1", at + 2);
  return n;
}

}  // namespace

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)])
      throw BraidError("permutation images are not a bijection");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto p = identity(n);
  std::swap(p.images_[static_cast<std::size_t>(a)], p.images_[static_cast<std::size_t>(b)]);
  return p;
}

Permutation Permutation::from_rank(int n, std::size_t r) {
  if (r >= factorial(n)) throw BraidError("permutation rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> im;
  im.reserve(pool.size());
  for (int k = n; k >= 1; --k) {
    std::size_t block = factorial(k - 1);
    std::size_t idx = r / block;
    r %= block;
    im.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(im));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (size() != rhs.size()) throw BraidError("permutation size mismatch");
  std::vector<int> im(images_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = images_[static_cast<std::size_t>(rhs.images_[i])];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

int Permutation::inversions() const {
  int count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i)
    for (std::size_t j = i + 1; j < images_.size(); ++j)
      if (images_[i] > images_[j]) ++count;
  return count;
}

int Permutation::order() const {
  // lcm of cycle lengths
  std::vector<char> seen(images_.size(), 0);
  long long result = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = 1;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return static_cast<int>(result);
}

std::size_t Permutation::rank() const {
  std::size_t r = 0;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (images_[static_cast<std::size_t>(j)] < images_[static_cast<std::size_t>(i)]) ++smaller;
    r += smaller * factorial(n - 1 - i);
  }
  return r;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ' ';
    os << images_[i] + 1;
  }
  return os.str();
}

// ------------------------------------------------------------------ BraidWord

BraidWord::BraidWord(int strands, std::vector<int> letters)
    : strands_(strands), letters_(std::move(letters)) {
  if (strands_ < 1) throw BraidError("strand count must be >= 1");
  for (int l : letters_)
    if (l == 0 || std::abs(l) >= strands_)
      throw BraidError("letter " + std::to_string(l) + " out of range for " +
                       std::to_string(strands_) + " strands");
}

BraidWord BraidWord::parse(std::string_view text) {
  std::size_t pos = 0;
  int n = parse_strands_header(text, pos);
  std::vector<int> letters;
  while (true) {
    skip_space(text, pos);
    if (pos >= text.size()) break;
    std::size_t at = pos;
    auto tok = next_token(text, pos);
    int l = parse_int(tok, at);
    if (l == 0 || std::abs(l) >= n)
      throw ParseError("letter " + std::to_string(l) + " out of range for " +
                           std::to_string(n) + " strands",
                       at);
    letters.push_back(l);
  }
  return BraidWord(n, std::move(letters));
}

BraidWord BraidWord::reduced() const {
  std::vector<int> out;
  out.reserve(letters_.size());
  for (int l : letters_) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return BraidWord(strands_, std::move(out));
}

std::string BraidWord::to_string() const {
  std::string s = "n=" + std::to_string(strands_);
  for (int l : letters_) {
    s += ' ';
    s += std::to_string(l);
  }
  return s;
}

BraidWord compose(const BraidWord& a, const BraidWord& b) {
  if (a.strands() != b.strands())
    throw BraidError("strand count mismatch: " + std::to_string(a.strands()) + " vs " +
                     std::to_string(b.strands()));
  std::vector<int> letters(a.letters().begin(), a.letters().end());
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  return BraidWord(a.strands(), std::move(letters)).reduced();
}

BraidWord inverse(const BraidWord& a) {
  std::vector<int> letters;
  letters.reserve(a.length());
  for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) letters.push_back(-*it);
  return BraidWord(a.strands(), std::move(letters)).reduced();
}

BraidWord power(const BraidWord& a, int p) {
  BraidWord base = p < 0 ? inverse(a) : a.reduced();
  std::vector<int> letters;
  const int count = std::abs(p);
  letters.reserve(base.length() * static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    letters.insert(letters.end(), base.letters().begin(), base.letters().end());
  return BraidWord(a.strands(), std::move(letters)).reduced();
}

Permutation permutation_of(const BraidWord& a) {
  std::vector<int> at(static_cast<std::size_t>(a.strands()));
  std::iota(at.begin(), at.end(), 0);
  for (int l : a.letters()) {
    auto k = static_cast<std::size_t>(std::abs(l));
    std::swap(at[k - 1], at[k]);
  }
  return Permutation(std::move(at));
}

bool is_pure(const BraidWord& a) { return permutation_of(a).is_identity(); }

int exponent_sum(const BraidWord& a) {
  int s = 0;
  for (int l : a.letters()) s += l > 0 ? 1 : -1;
  return s;
}

PureBraid::PureBraid(BraidWord word) : word_(std::move(word)) {
  if (!is_pure(word_)) throw BraidError("braid " + word_.to_string() + " is not pure");
}

PureBraid generator_A(int i, int j, int n) {
  if (i < 1 || j <= i || j > n)
    throw BraidError("A_{" + std::to_string(i) + "," + std::to_string(j) +
                     "} out of range for " + std::to_string(n) + " strands");
  std::vector<int> letters;
  for (int k = j - 1; k > i; --k) letters.push_back(k);
  letters.push_back(i);
  letters.push_back(i);
  for (int k = i + 1; k < j; ++k) letters.push_back(-k);
  return PureBraid(BraidWord(n, std::move(letters)));
}

BraidWord BandWord::expand() const {
  std::vector<int> letters;
  for (const auto& f : factors) {
    BraidWord a = generator_A(f.i, f.j, strands).word();
    if (f.exponent == 1) {
      letters.insert(letters.end(), a.letters().begin(), a.letters().end());
    } else if (f.exponent == -1) {
      for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) letters.push_back(-*it);
    } else {
      throw BraidError("band factor exponent must be +1 or -1");
    }
  }
  return BraidWord(strands, std::move(letters));
}

BandWord BandWord::parse(std::string_view text) {
  std::size_t pos = 0;
  BandWord out;
  out.strands = parse_strands_header(text, pos);
  while (true) {
    skip_space(text, pos);
    if (pos >= text.size()) break;
    std::size_t at = pos;
    auto tok = next_token(text, pos);
    if (tok.empty() || tok.front() != 'A')
      throw ParseError("expected band factor 'Ai,j' or 'Ai,j^-1'", at);
    auto body = tok.substr(1);
    int exponent = 1;
    if (auto caret = body.find('^'); caret != std::string_view::npos) {
      exponent = parse_int(body.substr(caret + 1), at + 2 + caret);
      body = body.substr(0, caret);
    }
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected 'i,j' after 'A'", at + 1);
    BandFactor f{parse_int(body.substr(0, comma), at + 1),
                 parse_int(body.substr(comma + 1), at + 2 + comma), exponent};
    if (f.i < 1 || f.j <= f.i || f.j > out.strands)
      throw ParseError("band factor indices out of range", at);
    if (exponent != 1 && exponent != -1) throw ParseError("exponent must be 1 or -1", at);
    out.factors.push_back(f);
  }
  return out;
}

std::string BandWord::to_string() const {
  std::string s = "n=" + std::to_string(strands);
  for (const auto& f : factors) {
    s += " A" + std::to_string(f.i) + "," + std::to_string(f.j);
    if (f.exponent == -1) s += "^-1";
  }
  return s;
}

BandWord factor_into_band_generators(const BraidWord& a) {
  const int n = a.strands();
  struct Pattern {
    BandFactor factor;
    std::vector<int> letters;
  };
  std::vector<Pattern> patterns;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int e : {1, -1}) {
        BandWord single{n, {{i, j, e}}};
        auto w = single.expand();
        patterns.push_back({{i, j, e}, {w.letters().begin(), w.letters().end()}});
      }
  BandWord out{n, {}};
  auto letters = a.letters();
  std::size_t pos = 0;
  while (pos < letters.size()) {
    const Pattern* match = nullptr;
    for (const auto& p : patterns) {
      if (pos + p.letters.size() > letters.size()) continue;
      if (std::equal(p.letters.begin(), p.letters.end(), letters.begin() + static_cast<std::ptrdiff_t>(pos))) {
        match = &p;
        break;
      }
    }
    if (!match)
      throw BraidError("word " + a.to_string() + " is not a product of band generators A_{i,j}");
    out.factors.push_back(match->factor);
    pos += match->letters.size();
  }
  return out;
}

// ----------------------------------------------------------------- CosetTable

CosetTable::CosetTable(int strands, std::vector<BraidWord> reps)
    : strands_(strands), reps_(std::move(reps)) {
  if (reps_.size() != factorial(strands_))
    throw BraidError("coset table for " + std::to_string(strands_) + " strands needs " +
                     std::to_string(factorial(strands_)) + " entries, got " +
                     std::to_string(reps_.size()));
  for (std::size_t r = 0; r < reps_.size(); ++r) {
    if (reps_[r].strands() != strands_) throw BraidError("coset representative strand mismatch");
    if (permutation_of(reps_[r]).rank() != r)
      throw BraidError("coset representative " + reps_[r].to_string() + " has the wrong permutation");
  }
}

const BraidWord& CosetTable::rep(const Permutation& sigma) const {
  if (sigma.size() != strands_) throw BraidError("coset lookup with wrong permutation size");
  return reps_[sigma.rank()];
}

BraidWord permutation_braid(const Permutation& sigma) {
  const int n = sigma.size();
  // target_pos[s] = final position of strand s
  std::vector<int> target_pos(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) target_pos[static_cast<std::size_t>(sigma(q))] = q;
  std::vector<int> at(static_cast<std::size_t>(n));
  std::iota(at.begin(), at.end(), 0);
  std::vector<int> letters;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (int k = 0; k + 1 < n; ++k) {
      auto uk = static_cast<std::size_t>(k);
      if (target_pos[static_cast<std::size_t>(at[uk])] > target_pos[static_cast<std::size_t>(at[uk + 1])]) {
        std::swap(at[uk], at[uk + 1]);
        letters.push_back(k + 1);
        swapped = true;
      }
    }
  }
  return BraidWord(n, std::move(letters));
}

CosetTable coset_representatives(int n, int max_strands) {
  if (n < 1) throw BraidError("strand count must be >= 1");
  if (n > max_strands)
    throw BraidError("coset table for " + std::to_string(n) + " strands exceeds the bound of " +
                     std::to_string(max_strands) + " (" + std::to_string(factorial(n)) + " entries)");
  std::vector<BraidWord> reps;
  const std::size_t count = factorial(n);
  reps.reserve(count);
  for (std::size_t r = 0; r < count; ++r) reps.push_back(permutation_braid(Permutation::from_rank(n, r)));
  return CosetTable(n, std::move(reps));
}

}  // namespace gg
