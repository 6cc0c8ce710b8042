#include "cstar/jiangsu.hpp"
#include "cstar/uhf.hpp"

#include <cctype>

namespace cstar {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::size_t parse_size(const std::string& s, const std::string& whole) {
  std::string t = strip(s);
  if (t.empty() || t.size() > 6) throw parse_error("bad size in descriptor '" + whole + "'");
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw parse_error("bad size in descriptor '" + whole + "'");
  std::size_t n = std::stoul(t);
  if (n == 0) throw parse_error("size must be positive in '" + whole + "'");
  return n;
}

// "head(x, y)" -> {x, y}, splitting at top-level commas
std::optional<std::vector<std::string>> call_args(const std::string& s, const std::string& head) {
  if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return std::nullopt;
  std::string body = s.substr(head.size() + 1, s.size() - head.size() - 2);
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) throw parse_error("unbalanced parentheses in '" + s + "'");
    if (c == ',' && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw parse_error("unbalanced parentheses in '" + s + "'");
  out.push_back(strip(cur));
  return out;
}

}  // namespace

PresentationPtr parse_presentation(const std::string& descriptor) {
  const std::string s = strip(descriptor);
  if (s.empty()) throw parse_error("empty presentation descriptor");
  if (s.rfind("matrix:", 0) == 0) return std::make_shared<MatrixPresentation>(parse_size(s.substr(7), s));
  if (s.rfind("fn:", 0) == 0) return std::make_shared<FunctionPresentation>(parse_size(s.substr(3), s));
  if (s.rfind("dimdrop:", 0) == 0) {
    std::string r = s.substr(8);
    auto c = r.find(',');
    if (c == std::string::npos) throw parse_error("dimdrop needs p,q: '" + s + "'");
    return std::make_shared<DimensionDropPresentation>(parse_size(r.substr(0, c), s), parse_size(r.substr(c + 1), s));
  }
  if (s == "jiangsu") return jiangsu_presentation();
  if (s.rfind("uhf:", 0) == 0) return uhf_presentation(SupernaturalNumber::parse(s.substr(4)));
  for (const char* head : {"tensor", "utensor"}) {
    auto args = call_args(s, head);
    if (!args) continue;
    if (args->size() != 2) throw parse_error(std::string(head) + " takes two descriptors: '" + s + "'");
    PresentationPtr a = parse_presentation((*args)[0]), b = parse_presentation((*args)[1]);
    auto ua = std::dynamic_pointer_cast<const UhfPresentation>(a);
    auto ub = std::dynamic_pointer_cast<const UhfPresentation>(b);
    if (std::string(head) == "tensor" && ua && ub) return std::make_shared<UhfTensorPresentation>(ua, ub);
    if (!a->realizable() || !b->realizable())
      throw parse_error(std::string(head) + " needs two concrete factors (or two UHF algebras): '" + s + "'");
    if (std::string(head) == "tensor") return std::make_shared<TensorPresentation>(a, b);
    return std::make_shared<UniversalTensorPresentation>(a, b);
  }
  if (auto args = call_args(s, "limit")) {
    if (args->size() != 1 || (*args)[0].rfind("matrix:", 0) != 0)
      throw parse_error("limit supports limit(matrix:n) only: '" + s + "'");
    return doubling_limit(parse_size((*args)[0].substr(7), s));
  }
  throw parse_error("unknown presentation descriptor '" + s + "'");
}

}  // namespace cstar
