#include "abshift/digit_seq.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "abshift/error.hpp"

namespace abshift {
namespace {

// Length of the shortest period p of w such that w = (w[0..p))^(|w|/p).
std::size_t primitive_root_length(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return n;
}

}  // namespace

DigitSeq::DigitSeq(Word preperiod, Word period, int alphabet_size)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  Digit hi = -1;
  for (const Word* w : {&preperiod_, &period_}) {
    for (Digit d : *w) {
      if (d < 0) throw Error(ErrorKind::Domain, "negative digit");
      hi = std::max(hi, d);
    }
  }
  alphabet_size_ = alphabet_size > 0 ? alphabet_size : std::max(hi + 1, 1);
  if (hi >= alphabet_size_) {
    throw Error(ErrorKind::Domain, "digit " + std::to_string(hi) + " outside alphabet of size " +
                                       std::to_string(alphabet_size_));
  }
  canonicalize();
}

DigitSeq DigitSeq::finite(Word word, int alphabet_size) {
  return DigitSeq(std::move(word), {}, alphabet_size);
}

DigitSeq DigitSeq::periodic(Word period, int alphabet_size) {
  if (period.empty()) throw Error(ErrorKind::Domain, "empty period");
  return DigitSeq({}, std::move(period), alphabet_size);
}

DigitSeq DigitSeq::eventually_periodic(Word preperiod, Word period, int alphabet_size) {
  if (period.empty()) throw Error(ErrorKind::Domain, "empty period");
  return DigitSeq(std::move(preperiod), std::move(period), alphabet_size);
}

void DigitSeq::canonicalize() {
  if (period_.empty()) return;
  period_.resize(primitive_root_length(period_));
  // Fold a preperiod tail that matches the period's last digit into a rotation.
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    preperiod_.pop_back();
  }
}

Digit DigitSeq::operator[](std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  if (period_.empty()) {
    throw Error(ErrorKind::Length, "index " + std::to_string(i) + " past finite word of length " +
                                       std::to_string(preperiod_.size()));
  }
  return period_[(i - preperiod_.size()) % period_.size()];
}

Word DigitSeq::prefix(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back((*this)[i]);
  return out;
}

Digit DigitSeq::max_digit() const {
  Digit hi = 0;
  for (Digit d : preperiod_) hi = std::max(hi, d);
  for (Digit d : period_) hi = std::max(hi, d);
  return hi;
}

Digit DigitSeq::min_digit() const {
  Digit lo = alphabet_size_;
  for (Digit d : preperiod_) lo = std::min(lo, d);
  for (Digit d : period_) lo = std::min(lo, d);
  return lo;
}

bool DigitSeq::contains_digit(Digit d, std::size_t from) const {
  for (std::size_t i = from; i < preperiod_.size(); ++i) {
    if (preperiod_[i] == d) return true;
  }
  return std::find(period_.begin(), period_.end(), d) != period_.end();
}

std::size_t DigitSeq::canonical_index(std::size_t n) const {
  if (period_.empty() || n < preperiod_.size()) return n;
  return preperiod_.size() + (n - preperiod_.size()) % period_.size();
}

DigitSeq DigitSeq::shifted(std::size_t n) const {
  if (!is_infinite()) {
    if (n > preperiod_.size()) {
      throw Error(ErrorKind::Length, "cannot shift a word of length " +
                                         std::to_string(preperiod_.size()) + " by " + std::to_string(n));
    }
    return DigitSeq(Word(preperiod_.begin() + static_cast<std::ptrdiff_t>(n), preperiod_.end()), {},
                    alphabet_size_);
  }
  if (n <= preperiod_.size()) {
    return DigitSeq(Word(preperiod_.begin() + static_cast<std::ptrdiff_t>(n), preperiod_.end()),
                    period_, alphabet_size_);
  }
  Word rotated = period_;
  std::rotate(rotated.begin(),
              rotated.begin() + static_cast<std::ptrdiff_t>((n - preperiod_.size()) % period_.size()),
              rotated.end());
  return DigitSeq({}, std::move(rotated), alphabet_size_);
}

DigitSeq DigitSeq::with_alphabet(int alphabet_size) const {
  return DigitSeq(preperiod_, period_, alphabet_size);
}

std::string DigitSeq::to_string() const {
  std::string s = format_word(preperiod_);
  if (!period_.empty()) {
    if (!s.empty()) s += ',';
    s += '(' + format_word(period_) + ')';
  }
  return s;
}

std::size_t agreement_horizon(const DigitSeq& a, const DigitSeq& b) {
  const std::size_t pa = a.period().empty() ? 0 : a.period().size();
  const std::size_t pb = b.period().empty() ? 0 : b.period().size();
  const std::size_t pre = std::max(a.preperiod().size(), b.preperiod().size());
  if (pa == 0 || pb == 0) return std::min(a.stored_length(), b.stored_length());
  return pre + std::lcm(pa, pb);
}

Word parse_word(const std::string& text) {
  Word out;
  if (text.find_first_not_of(' ') == std::string::npos) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::size_t a = pos, b = comma;
    while (a < b && text[a] == ' ') ++a;
    while (b > a && text[b - 1] == ' ') --b;
    Digit d = 0;
    auto [ptr, ec] = std::from_chars(text.data() + a, text.data() + b, d);
    if (a == b || ec != std::errc() || ptr != text.data() + b || d < 0) {
      throw Error(ErrorKind::Domain, "bad digit word '" + text + "'");
    }
    out.push_back(d);
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_word(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

}  // namespace abshift
