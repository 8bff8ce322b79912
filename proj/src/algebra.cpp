#include "mqg/algebra.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace mqg {

std::optional<BasisIndex> basis_mul(const GroupBackend& be, const BasisIndex& x, const BasisIndex& y) {
  // g2^{-1} h1 g2 == h2  <=>  h1 g2 == g2 h2
  if (!(be.mul(x.h, y.g) == be.mul(y.g, y.h))) return std::nullopt;
  return BasisIndex{be.mul(x.g, y.g), y.h};
}

Element elem_mul(const Element& x, const Element& y) { return mul_legs(x, y); }

std::vector<BasisIndex> sweep_basis(const std::vector<GroupElement>& sample) {
  std::vector<BasisIndex> out;
  out.reserve(sample.size() * sample.size());
  for (const auto& g : sample) {
    for (const auto& h : sample) out.push_back({g, h});
  }
  return out;
}

Element unit_element(const GroupBackend& be) {
  if (!be.is_finite()) throw UnlocalizedSum("the unit of D(" + be.name() + ") is not finitely supported");
  std::vector<Element::Term> terms;
  for (const auto& h : *be.elements()) terms.push_back({{BasisIndex{be.identity(), h}}, Scalar(1)});
  return Element::from_terms(&be, std::move(terms));
}

Element mult_apply(const Multiplier& m, const Element& x, Side side) {
  if (x.backend() != nullptr && m.backend() != nullptr && x.backend() != m.backend()) throw BackendMismatch();
  return side == Side::Left ? m.left(x) : m.right(x);
}

Multiplier mult_identity(const GroupBackend& be) {
  std::optional<Element> form;
  if (be.is_finite()) form = unit_element(be);
  return Multiplier(
      "1", &be, [](const Element& x) { return x; }, [](const Element& x) { return x; }, std::move(form));
}

Multiplier mult_from_element(const Element& x, std::string name) {
  if (name.empty()) name = "elem(" + format_element(x) + ")";
  return Multiplier(
      std::move(name), x.backend(), [x](const Element& a) { return x * a; }, [x](const Element& a) { return a * x; },
      x);
}

Multiplier mult_cached(const Multiplier& m) {
  struct Cache {
    std::mutex lock;
    std::map<BasisIndex, Element> left;
    std::map<BasisIndex, Element> right;
  };
  auto cache = std::make_shared<Cache>();
  const GroupBackend* p = m.backend();
  auto lookup = [cache, p](std::map<BasisIndex, Element> Cache::*side, const Multiplier& inner, bool from_left) {
    return [cache, p, side, inner, from_left](const Element& x) {
      return linear_map<1, 1>(x, p, [&](const Element::Key& key) {
        {
          std::lock_guard g(cache->lock);
          const auto it = ((*cache).*side).find(key[0]);
          if (it != ((*cache).*side).end()) return it->second;
        }
        const auto b = basis_element(p, key[0]);
        Element v = from_left ? inner.left(b) : inner.right(b);
        std::lock_guard g(cache->lock);
        return ((*cache).*side).emplace(key[0], std::move(v)).first->second;
      });
    };
  };
  return Multiplier(m.name(), p, lookup(&Cache::left, m, true), lookup(&Cache::right, m, false), m.element_form());
}

Multiplier mult_group(const GroupBackend& be, const GroupElement& k) {
  const GroupBackend* p = &be;
  auto left = [p, k](const Element& x) {
    return linear_map<1, 1>(x, p, [&](const Element::Key& key) {
      return basis_element(p, p->mul(k, key[0].g), key[0].h);
    });
  };
  auto right = [p, k](const Element& x) {
    const auto kinv = p->inv(k);
    return linear_map<1, 1>(x, p, [&](const Element::Key& key) {
      return basis_element(p, p->mul(key[0].g, k), p->mul(p->mul(kinv, key[0].h), k));
    });
  };
  Multiplier m("grp(" + be.format(k) + ")", &be, left, right);
  if (be.is_finite()) {
    std::vector<Element::Term> terms;
    for (const auto& h : *be.elements()) terms.push_back({{BasisIndex{k, h}}, Scalar(1)});
    return Multiplier(m.name(), &be, left, right, Element::from_terms(&be, std::move(terms)));
  }
  return m;
}

Multiplier mult_compose(const Multiplier& m1, const Multiplier& m2) {
  std::optional<Element> form;
  if (m1.element_form() && m2.element_form()) form = *m1.element_form() * *m2.element_form();
  return Multiplier(
      m1.name() + "*" + m2.name(), m1.backend() ? m1.backend() : m2.backend(),
      [m1, m2](const Element& x) { return m1.left(m2.left(x)); },
      [m1, m2](const Element& x) { return m2.right(m1.right(x)); }, std::move(form));
}

Multiplier mult_power(const Multiplier& m, const Multiplier& inverse, long exponent) {
  const Multiplier& base = exponent < 0 ? inverse : m;
  long n = exponent < 0 ? -exponent : exponent;
  if (n == 0) return mult_identity(*m.backend());
  Multiplier acc = base;
  for (long i = 1; i < n; ++i) acc = mult_compose(acc, base);
  return acc.named("(" + m.name() + ")^" + std::to_string(exponent));
}

Multiplier mult_add(const Multiplier& m1, const Multiplier& m2) {
  std::optional<Element> form;
  if (m1.element_form() && m2.element_form()) form = *m1.element_form() + *m2.element_form();
  return Multiplier(
      m1.name() + "+" + m2.name(), m1.backend() ? m1.backend() : m2.backend(),
      [m1, m2](const Element& x) { return m1.left(x) + m2.left(x); },
      [m1, m2](const Element& x) { return m1.right(x) + m2.right(x); }, std::move(form));
}

Multiplier mult_scale(const Multiplier& m, const Scalar& c) {
  std::optional<Element> form;
  if (m.element_form()) form = *m.element_form() * c;
  return Multiplier(
      c.short_str() + "*" + m.name(), m.backend(), [m, c](const Element& x) { return m.left(x) * c; },
      [m, c](const Element& x) { return m.right(x) * c; }, std::move(form));
}

Multiplier mult_sub(const Multiplier& m1, const Multiplier& m2) {
  return mult_add(m1, mult_scale(m2, Scalar(-1))).named(m1.name() + "-" + m2.name());
}

std::optional<BasisIndex> central_witness(const Multiplier& m, const std::vector<BasisIndex>& basis) {
  for (const auto& b : basis) {
    const auto x = basis_element(m.backend(), b);
    if (!(m.left(x) == m.right(x))) return b;
  }
  return std::nullopt;
}

std::optional<BasisIndex> mult_difference(const Multiplier& a, const Multiplier& b,
                                          const std::vector<BasisIndex>& basis) {
  for (const auto& x : basis) {
    const auto e = basis_element(a.backend() ? a.backend() : b.backend(), x);
    if (!(a.left(e) == b.left(e)) || !(a.right(e) == b.right(e))) return x;
  }
  return std::nullopt;
}

std::optional<std::pair<BasisIndex, BasisIndex>> compatibility_witness(const Multiplier& m,
                                                                       const std::vector<BasisIndex>& basis) {
  for (const auto& a : basis) {
    const auto ea = basis_element(m.backend(), a);
    const auto am = m.right(ea);
    for (const auto& b : basis) {
      const auto eb = basis_element(m.backend(), b);
      if (!(ea * m.left(eb) == am * eb)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

Element to_element(const Multiplier& m) {
  if (m.element_form()) return *m.element_form();
  return m.left(unit_element(*m.backend()));
}

}  // namespace mqg
