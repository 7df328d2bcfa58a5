#include "bvk/graded.hpp"

#include <algorithm>
#include <cctype>

namespace bvk {

Scalar parse_scalar(const std::string& text) {
  auto valid = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    bool slash = false;
    bool digit_after = false;
    for (; i < s.size(); ++i) {
      if (s[i] == '/') {
        if (slash || !digit_after) return false;
        slash = true;
        digit_after = false;
      } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        digit_after = true;
      } else {
        return false;
      }
    }
    return digit_after;
  };
  if (!valid(text)) throw DomainError("invalid rational literal '" + text + "'");
  std::string body = text[0] == '+' ? text.substr(1) : text;
  Scalar value;
  if (value.set_str(body, 10) != 0) throw DomainError("invalid rational literal '" + text + "'");
  if (value.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

std::vector<Unshuffle> unshuffles(int k, int n) {
  if (k < 1 || k > n) {
    throw DomainError("unshuffles: need 1 <= k <= n (got k=" + std::to_string(k) +
                      ", n=" + std::to_string(n) + ")");
  }
  std::vector<Unshuffle> out;
  std::vector<int> chosen(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) chosen[static_cast<std::size_t>(i)] = i;
  while (true) {
    Unshuffle u;
    u.split = k;
    u.perm = chosen;
    std::vector<bool> in_first(static_cast<std::size_t>(n), false);
    for (int c : chosen) in_first[static_cast<std::size_t>(c)] = true;
    for (int i = 0; i < n; ++i) {
      if (!in_first[static_cast<std::size_t>(i)]) u.perm.push_back(i);
    }
    out.push_back(std::move(u));

    // next k-subset in lexicographic order
    int i = k - 1;
    while (i >= 0 && chosen[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++chosen[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      chosen[static_cast<std::size_t>(j)] = chosen[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

int inversion_count(std::span<const int> perm) {
  int count = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++count;
    }
  }
  return count;
}

namespace {

template <bool WithPermutationSign>
int inversion_sign(std::span<const Degree> degrees, std::span<const int> perm) {
  if (degrees.size() != perm.size()) {
    throw DomainError("sign: degree sequence length " + std::to_string(degrees.size()) +
                      " does not match permutation length " + std::to_string(perm.size()));
  }
  long exponent = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) {
        const auto a = degrees[static_cast<std::size_t>(perm[i])];
        const auto b = degrees[static_cast<std::size_t>(perm[j])];
        exponent += parity(a) * parity(b);
        if constexpr (WithPermutationSign) exponent += 1;
      }
    }
  }
  return sign_pow(exponent);
}

}  // namespace

int graded_sign(std::span<const Degree> degrees, std::span<const int> perm) {
  return inversion_sign<true>(degrees, perm);
}

int graded_sign(std::span<const Degree> degrees, const Unshuffle& sigma) {
  return inversion_sign<true>(degrees, sigma.perm);
}

int koszul_sign(std::span<const Degree> degrees, std::span<const int> perm) {
  return inversion_sign<false>(degrees, perm);
}

int koszul_sign(std::span<const Degree> degrees, const Unshuffle& sigma) {
  return inversion_sign<false>(degrees, sigma.perm);
}

}  // namespace bvk
