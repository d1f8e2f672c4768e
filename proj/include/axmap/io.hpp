#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "axmap/detail/format.hpp"
#include "axmap/errors.hpp"
#include "axmap/tensor.hpp"

namespace axmap {

// Instance file: line 1 is "MAP <M> <n>", followed by n^M whitespace-separated
// costs in lexicographic index order, last index fastest.
// Solution file: line 1 is "objective <value>", lines 2..M+1 hold one
// permutation per dimension as n 1-based integers; line 2 (dimension 1) must
// be the identity.

namespace detail {

// Whitespace tokenizer that tracks 1-based line/column for parse errors.
class Tokenizer {
 public:
  explicit Tokenizer(std::istream& in) : in_(in) {}

  bool next(std::string& tok) {
    tok.clear();
    int c;
    while ((c = in_.get()) != EOF) {
      if (c == '\n') {
        ++line_;
        col_ = 0;
        continue;
      }
      ++col_;
      if (!std::isspace(c)) break;
    }
    if (c == EOF) return false;
    tok_line_ = line_;
    tok_col_ = col_;
    tok.push_back(static_cast<char>(c));
    while ((c = in_.get()) != EOF) {
      if (c == '\n') {
        ++line_;
        col_ = 0;
        break;
      }
      ++col_;
      if (std::isspace(c)) break;
      tok.push_back(static_cast<char>(c));
    }
    return true;
  }

  int line() const { return tok_line_; }
  int col() const { return tok_col_; }
  int cur_line() const { return line_; }

 private:
  std::istream& in_;
  int line_ = 1, col_ = 0;
  int tok_line_ = 1, tok_col_ = 1;
};

inline long parse_int(Tokenizer& tok, const std::string& what) {
  std::string s;
  if (!tok.next(s)) throw ParseError("missing " + what, tok.cur_line(), 1);
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected integer for " + what + ", got '" + s + "'",
                     tok.line(), tok.col());
  }
}

inline double parse_double(Tokenizer& tok, const std::string& what) {
  std::string s;
  if (!tok.next(s)) throw ParseError("missing " + what, tok.cur_line(), 1);
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected number for " + what + ", got '" + s + "'",
                     tok.line(), tok.col());
  }
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

}  // namespace detail

inline CostTensor read_instance(std::istream& in) {
  detail::Tokenizer tok(in);
  std::string magic;
  if (!tok.next(magic)) throw ParseError("empty instance file", 1, 1);
  if (magic != "MAP")
    throw ParseError("expected header 'MAP', got '" + magic + "'", tok.line(),
                     tok.col());
  const long dims = detail::parse_int(tok, "dimensionality");
  const long card = detail::parse_int(tok, "cardinality");
  if (dims < 2 || dims > 16)
    throw ParseError("dimensionality out of range", tok.line(), tok.col());
  if (card < 1)
    throw ParseError("cardinality out of range", tok.line(), tok.col());
  const std::size_t want = cell_count(static_cast<int>(dims), static_cast<int>(card));
  std::vector<double> costs;
  costs.reserve(want);
  for (std::size_t i = 0; i < want; ++i)
    costs.push_back(detail::parse_double(tok, "cost value " + std::to_string(i + 1)));
  std::string extra;
  if (tok.next(extra))
    throw ParseError("unexpected trailing token '" + extra + "'", tok.line(),
                     tok.col());
  return CostTensor(static_cast<int>(dims), static_cast<int>(card), std::move(costs));
}

inline CostTensor read_instance(const std::string& path) {
  auto in = detail::open_in(path);
  return read_instance(in);
}

inline void write_instance(const CostTensor& tensor, std::ostream& out) {
  out << "MAP " << tensor.dims() << ' ' << tensor.card() << '\n';
  const std::size_t row = static_cast<std::size_t>(tensor.card());
  for (std::size_t i = 0; i < tensor.size(); ++i) {
    out << detail::fmt_double(tensor[i]);
    out << ((i % row == row - 1) ? '\n' : ' ');
  }
}

inline void write_instance(const CostTensor& tensor, const std::string& path) {
  auto out = detail::open_out(path);
  write_instance(tensor, out);
}

struct SolutionFile {
  Assignment assignment;
  double objective = 0.0;
};

inline void write_solution(const Assignment& a, double objective,
                           std::ostream& out) {
  out << "objective " << detail::fmt_double(objective) << '\n';
  const std::size_t n = a.perms.empty() ? 0 : a.perms[0].size();
  for (std::size_t i = 0; i < n; ++i) out << (i + 1) << (i + 1 < n ? ' ' : '\n');
  for (const Perm& p : a.perms) {
    for (std::size_t i = 0; i < n; ++i)
      out << p[i] + 1 << (i + 1 < n ? ' ' : '\n');
  }
}

inline void write_solution(const Assignment& a, double objective,
                           const std::string& path) {
  auto out = detail::open_out(path);
  write_solution(a, objective, out);
}

// dims must be known to delimit the permutation rows; it comes from the
// instance the solution belongs to.
inline SolutionFile read_solution(std::istream& in, int dims, int card) {
  detail::Tokenizer tok(in);
  std::string kw;
  if (!tok.next(kw) || kw != "objective")
    throw ParseError("expected 'objective'", tok.line(), tok.col());
  SolutionFile sol;
  sol.objective = detail::parse_double(tok, "objective value");
  std::vector<Perm> rows;
  for (int k = 0; k < dims; ++k) {
    Perm p(static_cast<std::size_t>(card));
    for (int i = 0; i < card; ++i) {
      const long v = detail::parse_int(tok, "permutation entry");
      if (v < 1 || v > card)
        throw ValidationError("permutation entry " + std::to_string(v) +
                              " out of range 1.." + std::to_string(card));
      p[static_cast<std::size_t>(i)] = static_cast<int>(v - 1);
    }
    if (!is_permutation_of_n(p))
      throw ValidationError("solution row " + std::to_string(k + 2) +
                            " is not a permutation");
    rows.push_back(std::move(p));
  }
  for (int i = 0; i < card; ++i)
    if (rows[0][static_cast<std::size_t>(i)] != i)
      throw ValidationError("dimension 1 row must be the identity");
  sol.assignment.perms.assign(rows.begin() + 1, rows.end());
  std::string extra;
  if (tok.next(extra))
    throw ParseError("unexpected trailing token '" + extra + "'", tok.line(),
                     tok.col());
  return sol;
}

inline SolutionFile read_solution(const std::string& path, int dims, int card) {
  auto in = detail::open_in(path);
  return read_solution(in, dims, card);
}

}  // namespace axmap
