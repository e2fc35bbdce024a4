#include "lie2kit/report.hpp"

#include <algorithm>
#include <cstdint>

namespace lie2kit {

bool CheckReport::pass() const {
  for (auto &e : entries)
    if (!e.pass)
      return false;
  return true;
}

const CheckEntry *CheckReport::first_failure() const {
  for (auto &e : entries)
    if (!e.pass)
      return &e;
  return nullptr;
}

const CheckEntry *CheckReport::find(const std::string &label) const {
  for (auto &e : entries)
    if (e.label == label)
      return &e;
  return nullptr;
}

void CheckReport::append(const CheckReport &other, const std::string &prefix) {
  for (auto e : other.entries) {
    e.label = prefix + e.label;
    entries.push_back(std::move(e));
  }
}

void CheckReport::add_flag(const std::string &label, const std::string &anchor, bool pass,
                           const std::string &witness, const std::string &residual) {
  CheckEntry e;
  e.label = label;
  e.anchor = anchor;
  e.pass = pass;
  e.witness = witness;
  e.residual = residual;
  e.evaluations = 1;
  entries.push_back(std::move(e));
}

void require_pass(const CheckReport &rep, const std::string &what) {
  const CheckEntry *e = rep.first_failure();
  if (!e)
    return;
  std::string msg = what + ": " + e->label + " fails";
  if (!e->witness.empty())
    msg += " at " + e->witness;
  if (!e->residual.empty())
    msg += ", residual " + e->residual;
  throw PreconditionError(msg);
}

std::vector<std::string> coordinate_names(int dim) {
  if (dim == 1)
    return {"x"};
  if (dim == 2)
    return {"x", "y"};
  if (dim == 3)
    return {"x", "y", "z"};
  std::vector<std::string> n;
  for (int i = 0; i < dim; ++i)
    n.push_back("x" + std::to_string(i + 1));
  return n;
}

Probes make_probes(const std::string &stem, int dim, int rank, Rng &rng, int nrandom) {
  std::vector<Section> frame;
  for (int i = 0; i < rank; ++i)
    frame.push_back(frame_section(dim, rank, i));
  Probes p = make_probes(frame_names(stem, rank), frame, dim, rng, nrandom);
  for (std::size_t k = rank; k < p.names.size(); ++k)
    p.names[k] = "rand" + std::to_string(k - rank + 1) + "(" + stem + ")";
  return p;
}

Probes make_probes(const std::vector<std::string> &names, const std::vector<Section> &frame,
                   int dim, Rng &rng, int nrandom) {
  Probes p;
  p.names = names;
  p.values = frame;
  p.frame_count = static_cast<int>(frame.size());
  // Random combinations of the given sections with polynomial coefficients.
  for (int k = 0; k < nrandom; ++k) {
    if (frame.empty())
      break;
    Section s = zero_section(dim, static_cast<int>(frame[0].size()));
    for (auto &f : frame)
      s += rng.poly(dim) * f;
    p.names.push_back("rand" + std::to_string(k + 1));
    p.values.push_back(std::move(s));
  }
  return p;
}

namespace {

template <class Eval>
CheckEntry run_tuples(const std::string &label, const std::string &anchor,
                      const std::vector<const Probes *> &slots, Eval &&eval) {
  CheckEntry e;
  e.label = label;
  e.anchor = anchor;
  std::size_t n = slots.size();
  auto witness = [&](const std::vector<int> &idx) {
    std::string w = "(";
    for (std::size_t s = 0; s < n; ++s)
      w += (s ? "," : "") + slots[s]->names[idx[s]];
    return w + ")";
  };
  // Frame tuples in lexicographic order.
  bool empty = false;
  for (auto *s : slots)
    if (s->frame_count == 0)
      empty = true;
  std::vector<int> idx(n, 0);
  std::vector<const Section *> args(n);
  if (!empty) {
    while (true) {
      for (std::size_t s = 0; s < n; ++s)
        args[s] = &slots[s]->values[idx[s]];
      ++e.evaluations;
      std::string res;
      if (!eval(args, res) && e.pass) {
        e.pass = false;
        e.witness = witness(idx);
        e.residual = res;
      }
      int k = static_cast<int>(n) - 1;
      while (k >= 0 && ++idx[k] == slots[k]->frame_count)
        idx[k--] = 0;
      if (k < 0)
        break;
    }
  }
  // Aligned random tuples.
  std::size_t nrand = SIZE_MAX;
  for (auto *s : slots)
    nrand = std::min(nrand, s->values.size() - s->frame_count);
  if (n == 0)
    nrand = 0;
  for (std::size_t r = 0; r < nrand; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      idx[s] = slots[s]->frame_count + static_cast<int>(r);
      args[s] = &slots[s]->values[idx[s]];
    }
    ++e.evaluations;
    std::string res;
    if (!eval(args, res) && e.pass) {
      e.pass = false;
      e.witness = witness(idx);
      e.residual = res;
    }
  }
  if (n == 0) {
    std::string res;
    ++e.evaluations;
    if (!eval(args, res)) {
      e.pass = false;
      e.witness = "()";
      e.residual = res;
    }
  }
  return e;
}

} // namespace

CheckEntry check_identity(const std::string &label, const std::string &anchor,
                          const std::vector<const Probes *> &slots, const Identity &residual,
                          const std::vector<std::string> &value_frame,
                          const std::vector<std::string> &coords) {
  return run_tuples(label, anchor, slots,
                    [&](const std::vector<const Section *> &args, std::string &res) {
                      Section r = residual(args);
                      if (is_zero(r))
                        return true;
                      res = section_str(r, value_frame, coords);
                      return false;
                    });
}

CheckEntry check_scalar_identity(const std::string &label, const std::string &anchor,
                                 const std::vector<const Probes *> &slots,
                                 const ScalarIdentity &residual,
                                 const std::vector<std::string> &coords) {
  return run_tuples(label, anchor, slots,
                    [&](const std::vector<const Section *> &args, std::string &res) {
                      Poly r = residual(args);
                      if (r.is_zero())
                        return true;
                      res = r.str(coords);
                      return false;
                    });
}

} // namespace lie2kit
