#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace abshift {

using Digit = int;
using Word = std::vector<Digit>;

// One-sided digit sequence: a finite word, or preperiod followed by a
// repeated period. Infinite sequences are kept in a canonical form (primitive
// period, shortest preperiod), so structural equality is sequence equality.
class DigitSeq {
 public:
  DigitSeq() = default;

  static DigitSeq finite(Word word, int alphabet_size = 0);
  static DigitSeq periodic(Word period, int alphabet_size = 0);
  static DigitSeq eventually_periodic(Word preperiod, Word period, int alphabet_size = 0);

  const Word& preperiod() const { return preperiod_; }
  const Word& period() const { return period_; }
  int alphabet_size() const { return alphabet_size_; }

  bool is_infinite() const { return !period_.empty(); }
  // Number of stored digits for finite words; preperiod + period otherwise.
  std::size_t stored_length() const { return preperiod_.size() + period_.size(); }

  Digit operator[](std::size_t i) const;
  Word prefix(std::size_t n) const;

  Digit max_digit() const;
  Digit min_digit() const;
  // True iff digit d occurs at some index >= from.
  bool contains_digit(Digit d, std::size_t from = 0) const;

  // sigma^n; the period rotates once the preperiod is consumed.
  DigitSeq shifted(std::size_t n) const;
  // Index reduced to [0, preperiod + period) with the same suffix.
  std::size_t canonical_index(std::size_t n) const;

  // Same sequence with a different declared alphabet.
  DigitSeq with_alphabet(int alphabet_size) const;

  // "4,(1)" for 4 1 1 1 ...; finite words have no parentheses.
  std::string to_string() const;

  friend bool operator==(const DigitSeq& a, const DigitSeq& b) {
    return a.preperiod_ == b.preperiod_ && a.period_ == b.period_;
  }

 private:
  DigitSeq(Word preperiod, Word period, int alphabet_size);
  void canonicalize();

  Word preperiod_;
  Word period_;
  int alphabet_size_ = 0;
};

// Two infinite sequences that agree on this many leading digits are equal.
std::size_t agreement_horizon(const DigitSeq& a, const DigitSeq& b);

// Parses "1,0,2" (commas, optional spaces). Empty text gives an empty word.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

}  // namespace abshift
