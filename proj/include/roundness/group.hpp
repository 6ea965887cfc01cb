#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roundness {

/// Finitely generated groups with solvable word problem that the tool can
/// compute in exactly.
struct GroupSpec {
  enum class Kind { FreeAbelian, Cyclic, Free, FreeProduct, DirectProduct, Dihedral };

  Kind kind = Kind::FreeAbelian;
  long long param = 1;             // rank (FreeAbelian, Free) or modulus (Cyclic, Dihedral)
  std::vector<long long> orders;   // FreeProduct factor orders, 0 = infinite cyclic
  std::vector<GroupSpec> factors;  // DirectProduct

  static GroupSpec free_abelian(int rank);
  static GroupSpec cyclic(long long modulus);
  static GroupSpec free(int rank);
  static GroupSpec free_product(std::vector<long long> orders);
  static GroupSpec direct_product(std::vector<GroupSpec> factors);
  static GroupSpec dihedral(long long m);  // symmetries of the m-gon, order 2m

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Grammar: "Z^n", "Z/m", "F_k", "Z/a * Z/b * ..." (a factor "Z" is infinite
/// cyclic), "D_m", and direct products joined by " x ".
GroupSpec parse_group_spec(std::string_view text);
std::string to_string(const GroupSpec& spec);

struct Syllable {
  int letter = 0;
  long long exp = 0;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Canonical element representation; which fields are used depends on the
/// spec. Equality is structural because every operation returns canonical
/// forms.
struct GroupElement {
  std::vector<long long> coords;     // FreeAbelian vector, Cyclic {r}, Dihedral {k, reflection}
  std::vector<Syllable> word;        // Free / FreeProduct reduced word
  std::vector<GroupElement> parts;   // DirectProduct components

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

class Group {
 public:
  explicit Group(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement power(const GroupElement& g, long long k) const;
  bool is_identity(const GroupElement& g) const { return g == identity(); }

  /// Exact element order; nullopt for infinite order.
  std::optional<long long> order(const GroupElement& g) const;
  /// Group order; nullopt for infinite groups.
  std::optional<long long> size() const;

  /// Throws SpecMismatch if `g` is not a canonical element of this group.
  void check(const GroupElement& g) const;

  GroupElement parse(std::string_view literal) const;
  std::string format(const GroupElement& g) const;

  /// Letters of free (product) groups, components of abelian groups, r and s
  /// for dihedral groups.
  std::vector<GroupElement> standard_generators() const;

  /// Name of letter k in free groups and free products.
  static std::string letter_name(int k, int letters);

 private:
  GroupSpec spec_;
  std::vector<Group> factor_groups_;
};

/// Splits on commas that are not nested inside parentheses.
std::vector<std::string> split_top_level(std::string_view text, char sep = ',');

}  // namespace roundness
