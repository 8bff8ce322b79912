#include "mqg/statesum.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mqg {

Letter antipode_letter(const Letter& l) {
  if (l.kind == Letter::Kind::Fixed) throw std::invalid_argument("antipode_letter: fixed letters are not supported");
  return {l.kind, l.var, -l.exponent, nullptr};
}

Element apply_letter(const GroupBackend& be, const Letter& letter, const GroupElement* value, const Element& partial,
                     Leg::Direction direction) {
  const bool on_left = direction == Leg::Direction::OnLeftOf;
  if (letter.kind == Letter::Kind::Fixed) {
    return on_left ? letter.fixed->left(partial) : letter.fixed->right(partial);
  }
  const GroupElement k = letter.exponent == 1 ? *value : be.inv(*value);
  std::vector<Element::Term> out;
  out.reserve(partial.size());
  if (letter.kind == Letter::Kind::Group) {
    if (on_left) {
      for (const auto& [key, c] : partial.terms()) out.push_back({{BasisIndex{be.mul(k, key[0].g), key[0].h}}, c});
    } else {
      const auto kinv = be.inv(k);
      for (const auto& [key, c] : partial.terms()) {
        out.push_back({{BasisIndex{be.mul(key[0].g, k), be.mul(be.mul(kinv, key[0].h), k)}}, c});
      }
    }
  } else {
    for (const auto& [key, c] : partial.terms()) {
      // δ_k (x δ_h) != 0  iff  k = x h x^{-1};   (x δ_h) δ_k != 0  iff  h = k
      const bool keep = on_left ? be.mul(k, key[0].g) == be.mul(key[0].g, key[0].h) : key[0].h == k;
      if (keep) out.push_back({key, c});
    }
  }
  return Element::from_terms(&be, std::move(out));
}

namespace {

struct LegState {
  std::size_t done = 0;
  Element partial;
};

const Letter& next_letter(const Leg& leg, std::size_t done) {
  return leg.direction == Leg::Direction::OnLeftOf ? leg.letters[leg.letters.size() - 1 - done] : leg.letters[done];
}

// For an integral-closed leg whose unprocessed group letters carry exactly
// one occurrence of an unassigned index, the values of that index for which
// the finished group part can be e. nullopt when the leg gives no bound.
std::optional<std::pair<int, std::set<GroupElement>>> integral_candidates(
    const GroupBackend& be, const Leg& leg, std::size_t done, const Element& partial,
    const std::vector<std::optional<GroupElement>>& assign) {
  const bool on_left = leg.direction == Leg::Direction::OnLeftOf;
  // unprocessed letters in application order
  std::vector<const Letter*> rest;
  for (std::size_t d = done; d < leg.letters.size(); ++d) rest.push_back(&next_letter(leg, d));
  int unknown = -1;
  std::size_t at = 0;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const Letter& l = *rest[i];
    if (l.kind == Letter::Kind::Fixed) return std::nullopt;
    if (l.kind != Letter::Kind::Group || assign[static_cast<std::size_t>(l.var)]) continue;
    if (unknown >= 0) return std::nullopt;
    unknown = l.var;
    at = i;
  }
  if (unknown < 0) return std::nullopt;
  auto value = [&](const Letter& l) {
    const auto& k = *assign[static_cast<std::size_t>(l.var)];
    return l.exponent == 1 ? k : be.inv(k);
  };
  // Group part: OnRightOf gives x·w₁⋯wₙ, OnLeftOf gives wₙ⋯w₁·x in
  // application order. Solve for the unknown letter's value.
  GroupElement before = be.identity();
  GroupElement after = be.identity();
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i]->kind != Letter::Kind::Group || i == at) continue;
    const auto w = value(*rest[i]);
    if (i < at) {
      before = on_left ? be.mul(w, before) : be.mul(before, w);
    } else {
      after = on_left ? be.mul(w, after) : be.mul(after, w);
    }
  }
  std::set<GroupElement> out;
  for (const auto& [key, c] : partial.terms()) {
    const auto& x = key[0].g;
    // OnRightOf: x·before·y·after = e;  OnLeftOf: after·y·before·x = e
    const GroupElement y = on_left ? be.mul(be.inv(after), be.inv(be.mul(before, x)))
                                   : be.mul(be.inv(be.mul(x, before)), be.inv(after));
    out.insert(rest[at]->exponent == 1 ? y : be.inv(y));
  }
  return std::make_pair(unknown, std::move(out));
}

class Propagator {
 public:
  Propagator(const StateSum& p, const StateVisitor& visit)
      : p_(p), be_(*p.backend), visit_(visit), assign_(p.var_names.size()) {}

  void run(std::vector<LegState> legs) {
    for (std::size_t i = 0; i < legs.size(); ++i) {
      const Leg& leg = p_.legs[i];
      auto& st = legs[i];
      while (st.done < leg.letters.size()) {
        const Letter& l = next_letter(leg, st.done);
        if (l.kind != Letter::Kind::Fixed && !assign_[static_cast<std::size_t>(l.var)]) break;
        const GroupElement* v = l.kind == Letter::Kind::Fixed ? nullptr : &*assign_[static_cast<std::size_t>(l.var)];
        st.partial = apply_letter(be_, l, v, st.partial, leg.direction);
        ++st.done;
        if (st.partial.is_zero()) return;
      }
    }
    const bool finished = std::all_of(legs.begin(), legs.end(), [&, i = std::size_t{0}](const LegState& s) mutable {
      return s.done == p_.legs[i++].letters.size();
    });
    if (finished) {
      std::vector<GroupElement> values;
      values.reserve(assign_.size());
      for (const auto& a : assign_) values.push_back(a.value_or(be_.identity()));
      std::vector<Element> results;
      results.reserve(legs.size());
      for (auto& s : legs) results.push_back(std::move(s.partial));
      visit_(values, results);
      return;
    }

    // Candidate sets from every δ-letter ahead of each leg's head.
    std::vector<std::optional<std::set<GroupElement>>> cands(assign_.size());
    auto restrict_to = [&](int var, std::set<GroupElement> c) {
      auto& slot = cands[static_cast<std::size_t>(var)];
      if (!slot) {
        slot = std::move(c);
      } else {
        std::set<GroupElement> both;
        std::set_intersection(slot->begin(), slot->end(), c.begin(), c.end(), std::inserter(both, both.begin()));
        slot = std::move(both);
      }
    };
    for (std::size_t i = 0; i < legs.size(); ++i) delta_bounds(p_.legs[i], legs[i], restrict_to);
    for (std::size_t i = 0; i < legs.size(); ++i) {
      const Leg& leg = p_.legs[i];
      if (!leg.integral_closed || legs[i].done == leg.letters.size()) continue;
      auto ic = integral_candidates(be_, leg, legs[i].done, legs[i].partial, assign_);
      if (ic) restrict_to(ic->first, std::move(ic->second));
    }
    int best = -1;
    for (std::size_t v = 0; v < cands.size(); ++v) {
      if (cands[v] && (best < 0 || cands[v]->size() < cands[static_cast<std::size_t>(best)]->size())) {
        best = static_cast<int>(v);
      }
    }
    std::vector<GroupElement> choices;
    if (best >= 0) {
      choices.assign(cands[static_cast<std::size_t>(best)]->begin(), cands[static_cast<std::size_t>(best)]->end());
    } else {
      for (std::size_t i = 0; i < legs.size() && best < 0; ++i) {
        const Leg& leg = p_.legs[i];
        if (legs[i].done < leg.letters.size()) best = next_letter(leg, legs[i].done).var;
      }
      if (!be_.is_finite()) {
        throw UnlocalizedSum("index '" + p_.var_names[static_cast<std::size_t>(best)] +
                             "' cannot be bounded by any δ-factor over the infinite group " + be_.name());
      }
      choices = *be_.elements();
    }
    auto& slot = assign_[static_cast<std::size_t>(best)];
    for (const auto& c : choices) {
      slot = c;
      run(legs);
    }
    slot.reset();
  }

 private:
  // The label a δ-letter must match is q = h (OnRightOf) or g h g⁻¹
  // (OnLeftOf) for each term g δ_h of the partial product, conjugated by every
  // group letter applied before it. With those letters known the label is
  // transported exactly; otherwise it is only known up to conjugacy, which
  // still bounds the index when the class is finite.
  template <typename F>
  void delta_bounds(const Leg& leg, const LegState& st, F&& restrict_to) {
    const bool on_left = leg.direction == Leg::Direction::OnLeftOf;
    std::set<GroupElement> qs;
    for (const auto& [key, c] : st.partial.terms()) {
      const auto& x = key[0];
      qs.insert(on_left ? be_.mul(be_.mul(x.g, x.h), be_.inv(x.g)) : x.h);
    }
    bool known = true;
    for (std::size_t d = st.done; d < leg.letters.size(); ++d) {
      const Letter& l = next_letter(leg, d);
      if (l.kind == Letter::Kind::Fixed) return;
      const auto& a = assign_[static_cast<std::size_t>(l.var)];
      if (l.kind == Letter::Kind::Group) {
        if (!a || !known) {
          known = false;
          continue;
        }
        const auto w = l.exponent == 1 ? *a : be_.inv(*a);
        std::set<GroupElement> next;
        for (const auto& q : qs) next.insert(on_left ? be_.mul(be_.mul(w, q), be_.inv(w)) : be_.mul(be_.mul(be_.inv(w), q), w));
        qs = std::move(next);
        continue;
      }
      if (a) continue;
      std::set<GroupElement> c;
      for (const auto& q : qs) {
        if (known) {
          c.insert(l.exponent == 1 ? q : be_.inv(q));
          continue;
        }
        const auto* cls = conjugacy_class(q);
        if (cls == nullptr) {
          c.clear();
          break;
        }
        for (const auto& y : *cls) c.insert(l.exponent == 1 ? y : be_.inv(y));
      }
      if (known || !c.empty() || qs.empty()) restrict_to(l.var, std::move(c));
    }
  }

  // nullptr when the class grows past the cap.
  const std::set<GroupElement>* conjugacy_class(const GroupElement& q) {
    auto it = classes_.find(q);
    if (it == classes_.end()) {
      std::optional<std::set<GroupElement>> cls;
      try {
        cls = conjugacy_orbit(q);
      } catch (const ClosureExceedsCap&) {
      }
      it = classes_.emplace(q, std::move(cls)).first;
    }
    return it->second ? &*it->second : nullptr;
  }

  std::set<GroupElement> conjugacy_orbit(const GroupElement& q) const {
    constexpr std::size_t kCap = 256;
    std::set<GroupElement> seen{q};
    std::vector<GroupElement> todo{q};
    auto gens = be_.generators();
    const auto n = gens.size();
    for (std::size_t i = 0; i < n; ++i) gens.push_back(be_.inv(gens[i]));
    while (!todo.empty()) {
      const auto y = todo.back();
      todo.pop_back();
      for (const auto& s : gens) {
        auto z = be_.mul(be_.mul(s, y), be_.inv(s));
        if (seen.insert(z).second) {
          if (seen.size() > kCap) throw ClosureExceedsCap("conjugacy class");
          todo.push_back(std::move(z));
        }
      }
    }
    return seen;
  }

  std::map<GroupElement, std::optional<std::set<GroupElement>>> classes_;
  const StateSum& p_;
  const GroupBackend& be_;
  const StateVisitor& visit_;
  std::vector<std::optional<GroupElement>> assign_;
};

// δ_{k^a} and k^b commute, so a δ-letter may move toward the anchor past
// group letters carrying the same index. Doing so lets it bound the index
// before the group letter needs it.
void sink_deltas(Leg& leg) {
  auto& w = leg.letters;
  const bool on_left = leg.direction == Leg::Direction::OnLeftOf;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Letter& a = w[i];
      const Letter& b = w[i + 1];
      if (a.kind == Letter::Kind::Fixed || b.kind == Letter::Kind::Fixed || a.var != b.var) continue;
      const bool swap = on_left ? (a.kind == Letter::Kind::Delta && b.kind == Letter::Kind::Group)
                                : (a.kind == Letter::Kind::Group && b.kind == Letter::Kind::Delta);
      if (swap) {
        std::swap(w[i], w[i + 1]);
        moved = true;
      }
    }
  }
}

void check_problem(const StateSum& p) {
  if (p.backend == nullptr) throw std::invalid_argument("state sum without backend");
  std::vector<bool> used(p.var_names.size(), false);
  for (const auto& leg : p.legs) {
    for (const auto& l : leg.letters) {
      if (l.kind == Letter::Kind::Fixed) {
        if (!l.fixed) throw std::invalid_argument("fixed letter without multiplier");
        continue;
      }
      if (l.var < 0 || static_cast<std::size_t>(l.var) >= used.size()) {
        throw std::invalid_argument("letter refers to an undeclared index");
      }
      used[static_cast<std::size_t>(l.var)] = true;
    }
  }
  for (std::size_t v = 0; v < used.size(); ++v) {
    if (!used[v]) throw std::invalid_argument("index '" + p.var_names[v] + "' occurs in no letter");
  }
}

}  // namespace

void enumerate_states(const StateSum& problem, EvalMode mode, const StateVisitor& visit) {
  check_problem(problem);
  const GroupBackend& be = *problem.backend;
  if (mode == EvalMode::Propagate) {
    StateSum sunk = problem;
    for (auto& leg : sunk.legs) sink_deltas(leg);
    std::vector<LegState> legs;
    for (const auto& leg : sunk.legs) legs.push_back({0, leg.anchor});
    Propagator(sunk, visit).run(std::move(legs));
    return;
  }
  if (!be.is_finite()) throw Unsupported("brute-force state sums need a finite group");
  const auto& els = *be.elements();
  const std::size_t n = problem.var_names.size();
  std::vector<std::size_t> odo(n, 0);
  std::vector<GroupElement> values(n, els.front());
  std::vector<Element> results(problem.legs.size());
  while (true) {
    for (std::size_t v = 0; v < n; ++v) values[v] = els[odo[v]];
    for (std::size_t i = 0; i < problem.legs.size(); ++i) {
      const Leg& leg = problem.legs[i];
      Element partial = leg.anchor;
      for (std::size_t d = 0; d < leg.letters.size(); ++d) {
        const Letter& l = next_letter(leg, d);
        const GroupElement* v = l.kind == Letter::Kind::Fixed ? nullptr : &values[static_cast<std::size_t>(l.var)];
        partial = apply_letter(be, l, v, partial, leg.direction);
      }
      results[i] = std::move(partial);
    }
    visit(values, results);
    std::size_t v = 0;
    while (v < n && ++odo[v] == els.size()) odo[v++] = 0;
    if (v == n) break;
  }
}

namespace {

template <std::size_t N>
Tensor<N> sum_states(const StateSum& problem, EvalMode mode) {
  if (problem.legs.size() != N) throw std::invalid_argument("state sum has the wrong number of legs");
  std::vector<typename Tensor<N>::Term> buf;
  enumerate_states(problem, mode, [&](std::span<const GroupElement>, std::span<const Element> legs) {
    if constexpr (N == 1) {
      for (const auto& t : legs[0].terms()) buf.push_back(t);
    } else if constexpr (N == 2) {
      for (const auto& t : outer(legs[0], legs[1]).terms()) buf.push_back(t);
    } else {
      for (const auto& t : outer(outer(legs[0], legs[1]), legs[2]).terms()) buf.push_back(t);
    }
  });
  return Tensor<N>::from_terms(problem.backend, std::move(buf));
}

}  // namespace

Element sum_states1(const StateSum& problem, EvalMode mode) { return sum_states<1>(problem, mode); }
TensorElement sum_states2(const StateSum& problem, EvalMode mode) { return sum_states<2>(problem, mode); }
Tensor3 sum_states3(const StateSum& problem, EvalMode mode) { return sum_states<3>(problem, mode); }

}  // namespace mqg
