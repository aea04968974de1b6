// Writes the p-group fixtures used by the tests:
//   order81_NN.json   one per isomorphism class of groups of order 81
//   order243_exp3.json  C3 acting on F3^4 by two Jordan 2-blocks
//   order27_exp9.json   the non-abelian group of order 27 and exponent 9
//
// Order 81: every group of order 3^4 has a refined central series and so a
// power-commutator presentation on g1..g4 with
//   g_i^3 = w_i in <g_(i+1), ...>,   g_j^(g_i) = g_j v_ij with v_ij in <g_(j+1), ...>.
// We run over all 3^10 parameter choices, compute right multiplication by each
// g_k on the 81 normal words by collection, and keep the choices whose four
// permutations generate a group of order 81 (then the action is regular and the
// group is a genuine group of order 81). Survivors are sorted into isomorphism
// classes.

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "transiso/error.hpp"
#include "transiso/io.hpp"

namespace {

using transiso::Element;
using transiso::Group;
using Vec = std::array<int, 4>;
using Word = std::vector<int>;  // generator letters 0..3

struct Presentation {
  std::array<Vec, 4> power{};            // g_i^3 as exponent vector
  std::array<std::array<Vec, 4>, 4> comm{};  // comm[i][j], i < j
};

// Letters of the normal word with exponent vector v.
Word letters(const Vec& v) {
  Word w;
  for (int k = 0; k < 4; ++k)
    for (int e = 0; e < v[k]; ++e) w.push_back(k);
  return w;
}

void mul_gen(const Presentation& pr, Vec& e, int k) {
  Word tail;
  if (e[k] == 2) {
    Word p = letters(pr.power[k]);
    tail.insert(tail.end(), p.begin(), p.end());
  }
  for (int j = k + 1; j < 4; ++j) {
    Word c = letters(pr.comm[k][j]);
    for (int r = 0; r < e[j]; ++r) {
      tail.push_back(j);
      tail.insert(tail.end(), c.begin(), c.end());
    }
  }
  e[k] = (e[k] + 1) % 3;
  for (int j = k + 1; j < 4; ++j) e[j] = 0;
  for (int letter : tail) mul_gen(pr, e, letter);
}

int index_of(const Vec& v) { return ((v[0] * 3 + v[1]) * 3 + v[2]) * 3 + v[3]; }

Vec vec_of(int x) {
  Vec v;
  for (int k = 3; k >= 0; --k) {
    v[k] = x % 3;
    x /= 3;
  }
  return v;
}

// Vector with free coordinates from position `from`, read off digits of `code`.
Vec tail_vec(int from, int code) {
  Vec v{0, 0, 0, 0};
  for (int k = 3; k >= from; --k) {
    v[k] = code % 3;
    code /= 3;
  }
  return v;
}

struct Candidate {
  std::vector<std::vector<std::uint32_t>> gens;
  Group group;
  std::string params;
};

std::vector<std::uint32_t> key_of(const Group& g) {
  std::vector<std::uint32_t> key = transiso::order_statistics(g);
  key.push_back(static_cast<std::uint32_t>(transiso::center(g).count()));
  key.push_back(static_cast<std::uint32_t>(transiso::commutator_subgroup(g).count()));
  std::vector<std::uint32_t> cent;
  for (Element x = 0; x < g.order(); ++x) cent.push_back(static_cast<std::uint32_t>(transiso::centralizer(g, x).count()));
  std::sort(cent.begin(), cent.end());
  key.insert(key.end(), cent.begin(), cent.end());
  return key;
}

std::uint32_t exponent(const Group& g) {
  std::uint32_t e = 1;
  for (Element x = 0; x < g.order(); ++x) e = std::max(e, g.element_order(x));
  return e;
}

void write_fixture(const std::filesystem::path& path, const std::string& label, const std::string& comment,
                   std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& gens) {
  nlohmann::json j = {{"kind", "perm"}, {"label", label}, {"comment", comment}, {"degree", degree}};
  j["generators"] = gens;
  std::ofstream out(path);
  if (!out) throw transiso::InvalidArgument("cannot write " + path.string());
  out << j.dump() << "\n";
}

std::string describe(const Group& g) {
  std::ostringstream os;
  const auto z = transiso::center(g).count();
  const auto d = transiso::commutator_subgroup(g).count();
  os << "order " << g.order() << ", " << (transiso::is_abelian(g) ? "abelian" : "non-abelian") << ", exponent "
     << exponent(g) << ", |Z| = " << z << ", |G'| = " << d;
  return os.str();
}

int order81(const std::filesystem::path& dir) {
  std::vector<Candidate> classes;
  std::vector<std::vector<std::uint32_t>> keys;
  std::size_t consistent = 0;
  // Parameter digits: w1 (27) w2 (9) w3 (3) c12 (9) c13 (3) c23 (3).
  for (int code = 0; code < 59049; ++code) {
    int c = code;
    auto take = [&c](int radix) {
      const int v = c % radix;
      c /= radix;
      return v;
    };
    Presentation pr;
    pr.power[0] = tail_vec(1, take(27));
    pr.power[1] = tail_vec(2, take(9));
    pr.power[2] = tail_vec(3, take(3));
    pr.comm[0][1] = tail_vec(2, take(9));
    pr.comm[0][2] = tail_vec(3, take(3));
    pr.comm[1][2] = tail_vec(3, take(3));

    std::vector<std::vector<std::uint32_t>> gens(4, std::vector<std::uint32_t>(81));
    for (int k = 0; k < 4; ++k)
      for (int x = 0; x < 81; ++x) {
        Vec e = vec_of(x);
        mul_gen(pr, e, k);
        gens[k][x] = static_cast<std::uint32_t>(index_of(e));
      }
    Group g = [&] {
      try {
        return transiso::permutation_closure(81, gens, 81);
      } catch (const transiso::OrderLimitExceeded&) {
        return Group({0}, "");
      }
    }();
    if (g.order() != 81) continue;
    ++consistent;
    const auto key = key_of(g);
    bool known = false;
    for (std::size_t i = 0; i < classes.size() && !known; ++i)
      if (keys[i] == key && transiso::isomorphic(classes[i].group, g)) known = true;
    if (known) continue;
    std::ostringstream params;
    params << "pc parameters code " << code;
    classes.push_back({gens, std::move(g), params.str()});
    keys.push_back(key);
  }

  // Stable order: abelian first, then by invariant key.
  std::vector<std::size_t> order(classes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const bool aa = transiso::is_abelian(classes[a].group), ab = transiso::is_abelian(classes[b].group);
    if (aa != ab) return aa;
    return keys[a] < keys[b];
  });
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto& c = classes[order[r]];
    char name[32];
    std::snprintf(name, sizeof name, "order81_%02zu", r + 1);
    write_fixture(dir / (std::string(name) + ".json"), name, describe(c.group) + "; " + c.params, 81, c.gens);
  }
  std::cout << consistent << " consistent presentations, " << classes.size() << " classes of order 81\n";
  return classes.size() == 15 ? 0 : 1;
}

// C3 acting on F3^4 by A = I + N, N = two nilpotent Jordan blocks of size 2.
// As a permutation group on F3^4: translations and x -> x A.
void order243(const std::filesystem::path& dir) {
  auto idx = [](const Vec& v) { return static_cast<std::uint32_t>(index_of(v)); };
  std::vector<std::vector<std::uint32_t>> gens;
  for (int k = 0; k < 4; ++k) {
    std::vector<std::uint32_t> t(81);
    for (int x = 0; x < 81; ++x) {
      Vec v = vec_of(x);
      v[k] = (v[k] + 1) % 3;
      t[x] = idx(v);
    }
    gens.push_back(std::move(t));
  }
  // Row vector times A: (x0, x1, x2, x3) -> (x0, x0 + x1, x2, x2 + x3).
  std::vector<std::uint32_t> a(81);
  for (int x = 0; x < 81; ++x) {
    Vec v = vec_of(x);
    Vec w{v[0], (v[0] + v[1]) % 3, v[2], (v[2] + v[3]) % 3};
    a[x] = idx(w);
  }
  gens.push_back(std::move(a));
  const Group g = transiso::permutation_closure(81, gens, 243);
  write_fixture(dir / "order243_exp3.json", "C3 x| C3^4",
                describe(g) + "; C3 acting on F3^4 by two unipotent Jordan blocks of size 2", 81, gens);
  std::cout << "order 243 fixture: " << describe(g) << "\n";
}

void order27(const std::filesystem::path& dir) {
  std::vector<std::uint32_t> a(9), b(9);
  for (std::uint32_t x = 0; x < 9; ++x) {
    a[x] = (x + 1) % 9;
    b[x] = (4 * x) % 9;
  }
  const Group g = transiso::permutation_closure(9, {a, b});
  write_fixture(dir / "order27_exp9.json", "C9 x| C3", describe(g) + "; x -> x + 1 and x -> 4x on Z/9", 9, {a, b});
  std::cout << "order 27 fixture: " << describe(g) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  try {
    order27(dir);
    order243(dir);
    return order81(dir);
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << "\n";
    return 1;
  }
}
