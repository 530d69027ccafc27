#include "rtype/parampoly.hpp"

#include <sstream>

namespace rtype {

ParamPoly ParamPoly::variable(std::shared_ptr<const ParamTable> table, int slot) {
  ParamPoly p;
  p.table_ = std::move(table);
  Expo e(static_cast<size_t>(p.table_->slots()));
  e[static_cast<size_t>(slot)] = 1;
  p.terms_[e] = Complex(1);
  return p;
}

Expo ParamPoly::resize_expo(const Expo& e) const {
  if (!table_) return e;
  Expo r = e;
  r.resize(static_cast<size_t>(table_->slots()));
  return r;
}

void ParamPoly::adopt(const ParamPoly& o) {
  if (!table_ && o.table_) {
    table_ = o.table_;
    std::map<Expo, Complex> resized;
    for (const auto& [e, c] : terms_) resized[resize_expo(e)] = c;
    terms_ = std::move(resized);
  }
}

void ParamPoly::add_term(const Expo& e, const Complex& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
  ParamPoly r = *this;
  r.adopt(o);
  for (const auto& [e, c] : o.terms_) r.add_term(r.resize_expo(e), c);
  return r;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const {
  ParamPoly r = *this;
  r.adopt(o);
  for (const auto& [e, c] : o.terms_) r.add_term(r.resize_expo(e), -c);
  return r;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
  ParamPoly r;
  r.table_ = table_ ? table_ : o.table_;
  for (const auto& [ea, ca] : terms_) {
    Expo ra = r.resize_expo(ea);
    for (const auto& [eb, cb] : o.terms_) {
      Expo e = ra;
      Expo rb = r.resize_expo(eb);
      if (e.size() < rb.size()) e.resize(rb.size());
      for (size_t i = 0; i < rb.size(); ++i) e[i] += rb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r;
  r.table_ = table_;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

ParamPoly ParamPoly::conjugated() const {
  ParamPoly r;
  r.table_ = table_;
  for (const auto& [e, c] : terms_) {
    Expo m = e;
    if (table_)
      for (int j = 0; j < table_->n_complex; ++j)
        std::swap(m[static_cast<size_t>(table_->c_slot(j))],
                  m[static_cast<size_t>(table_->cb_slot(j))]);
    r.add_term(m, c.conj());
  }
  return r;
}

ParamPoly ParamPoly::substituted(int slot, const ParamPoly& value) const {
  ParamPoly r;
  r.table_ = table_;
  ParamPoly one{Rational(1)};
  one.adopt(*this);
  std::vector<ParamPoly> powers{one};
  for (const auto& [e, c] : terms_) {
    int d = e[static_cast<size_t>(slot)];
    while (static_cast<int>(powers.size()) <= d) powers.push_back(powers.back() * value);
    Expo rest = e;
    rest[static_cast<size_t>(slot)] = 0;
    ParamPoly mono;
    mono.table_ = table_;
    mono.terms_[rest] = c;
    r = r + mono * powers[static_cast<size_t>(d)];
  }
  return r;
}

ParamPoly ParamPoly::with_param_zero(int param, bool is_real) const {
  if (!table_) return *this;  // scalars carry no parameters
  ParamPoly r;
  r.table_ = table_;
  for (const auto& [e, c] : terms_) {
    bool dead;
    if (is_real) {
      dead = e[static_cast<size_t>(table_->s_slot(param))] != 0;
    } else {
      dead = e[static_cast<size_t>(table_->c_slot(param))] != 0 ||
             e[static_cast<size_t>(table_->cb_slot(param))] != 0;
    }
    if (!dead) r.add_term(e, c);
  }
  return r;
}

Complex ParamPoly::eval(const std::vector<Complex>& cvals,
                        const std::vector<Rational>& svals) const {
  Complex acc;
  for (const auto& [e, c] : terms_) {
    Complex m = c;
    if (table_) {
      for (int j = 0; j < table_->n_complex; ++j) {
        int dc = e[static_cast<size_t>(table_->c_slot(j))];
        int db = e[static_cast<size_t>(table_->cb_slot(j))];
        if (dc) m *= cvals[static_cast<size_t>(j)].pow(dc);
        if (db) m *= cvals[static_cast<size_t>(j)].conj().pow(db);
      }
      for (int j = 0; j < table_->n_real; ++j) {
        int ds = e[static_cast<size_t>(table_->s_slot(j))];
        if (ds) m *= Complex(svals[static_cast<size_t>(j)].pow(ds));
      }
    }
    acc += m;
  }
  return acc;
}

int ParamPoly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

bool ParamPoly::uses_slot(int slot) const {
  for (const auto& [e, c] : terms_)
    if (static_cast<size_t>(slot) < e.size() && e[static_cast<size_t>(slot)] != 0) return true;
  return false;
}

bool ParamPoly::balanced_signed() const {
  if (terms_.empty() || !table_) return false;
  int sign = 0;
  for (const auto& [e, c] : terms_) {
    if (!c.is_real()) return false;
    int s = c.re().sign();
    if (sign == 0) sign = s;
    if (s != sign) return false;
    for (int j = 0; j < table_->n_complex; ++j)
      if (e[static_cast<size_t>(table_->c_slot(j))] != e[static_cast<size_t>(table_->cb_slot(j))])
        return false;
  }
  return true;
}

bool ParamPoly::linear_holomorphic() const {
  if (terms_.empty() || !table_) return false;
  for (const auto& [e, c] : terms_) {
    int deg = 0, cdeg = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      deg += e[i];
      if (table_->is_c(static_cast<int>(i))) cdeg += e[i];
    }
    if (deg != 1 || cdeg != 1) return false;
  }
  return true;
}

bool ParamPoly::s_only() const {
  if (!table_) return terms_.empty();
  for (const auto& [e, c] : terms_)
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0 && !table_->is_s(static_cast<int>(i))) return false;
  return true;
}

std::optional<int> ParamPoly::single_holomorphic_param() const {
  if (!table_ || terms_.empty()) return std::nullopt;
  int param = -1;
  for (const auto& [e, c] : terms_) {
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      int slot = static_cast<int>(i);
      if (table_->is_cb(slot) || table_->is_s(slot)) return std::nullopt;
      int p = table_->param_of_slot(slot);
      if (param >= 0 && p != param) return std::nullopt;
      param = p;
    }
  }
  if (param < 0) return std::nullopt;
  return param;
}

std::optional<std::vector<std::vector<Complex>>> ParamPoly::herm_form() const {
  if (!table_ || terms_.empty()) return std::nullopt;
  int m = table_->n_complex;
  std::vector<std::vector<Complex>> H(static_cast<size_t>(m),
                                      std::vector<Complex>(static_cast<size_t>(m)));
  for (const auto& [e, c] : terms_) {
    int cj = -1, ck = -1, total = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      int slot = static_cast<int>(i);
      if (table_->is_s(slot)) return std::nullopt;
      if (e[i] > 1) return std::nullopt;
      if (table_->is_c(slot)) {
        if (cj >= 0) return std::nullopt;
        cj = table_->param_of_slot(slot);
      } else {
        if (ck >= 0) return std::nullopt;
        ck = table_->param_of_slot(slot);
      }
      total += e[i];
    }
    if (cj < 0 || ck < 0 || total != 2) return std::nullopt;
    H[static_cast<size_t>(cj)][static_cast<size_t>(ck)] = c;
  }
  return H;
}

std::string ParamPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      int slot = static_cast<int>(i);
      if (table_->is_c(slot))
        os << "*c" << table_->param_of_slot(slot);
      else if (table_->is_cb(slot))
        os << "*~c" << table_->param_of_slot(slot);
      else
        os << "*s" << table_->param_of_slot(slot);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace rtype
