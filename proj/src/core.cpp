#include "intercon/core.hpp"

#include <algorithm>
#include <functional>

namespace intercon {

std::string to_string(VarKind k) {
  switch (k) {
    case VarKind::sync: return "sync";
    case VarKind::dataflow: return "dataflow";
    case VarKind::state: return "state";
    case VarKind::state_next: return "state_next";
    case VarKind::comm: return "comm";
  }
  return "?";
}

std::string to_string(const Var& v) {
  switch (v.kind) {
    case VarKind::sync: return v.name;
    case VarKind::dataflow: return "^" + v.name;
    case VarKind::state: return "state." + v.name;
    case VarKind::state_next: return "state'." + v.name;
    case VarKind::comm: return "$" + v.name;
  }
  return v.name;
}

std::set<std::string> ports(const std::set<Var>& vars) {
  std::set<std::string> out;
  for (const auto& v : vars)
    if (v.is_flow()) out.insert(v.name);
  return out;
}

std::set<Var> flow_closure(const std::set<Var>& vars) {
  std::set<Var> out = vars;
  for (const auto& v : vars) {
    if (v.kind == VarKind::sync) out.insert(Var::dataflow(v.name));
    if (v.kind == VarKind::dataflow) out.insert(Var::sync(v.name));
  }
  return out;
}

GroundTerm GroundTerm::apply(std::string_view fn, std::span<const GroundTerm> args) {
  std::string s(fn);
  if (!args.empty()) {
    s += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) s += ',';
      s += args[i].str();
    }
    s += ')';
  }
  return GroundTerm(std::move(s));
}

const GroundTerm& GroundTerm::noflow() {
  static const GroundTerm nf("NOFLOW");
  return nf;
}

bool GroundTerm::is_noflow() const { return text_ == noflow().text_; }

std::string to_string(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<GroundTerm>(v).str();
}

namespace {

template <typename Bindings>
auto lower(Bindings& bs, const Var& v) {
  return std::lower_bound(bs.begin(), bs.end(), v,
                          [](const Binding& b, const Var& key) { return b.var < key; });
}

}  // namespace

Assignment::Assignment(std::initializer_list<Binding> bindings) {
  for (const auto& b : bindings) set(b.var, b.value);
}

const Value* Assignment::find(const Var& v) const {
  auto it = lower(bindings_, v);
  if (it == bindings_.end() || it->var != v) return nullptr;
  return &it->value;
}

std::optional<bool> Assignment::sync(std::string_view name) const {
  const Value* v = find(Var::sync(std::string(name)));
  if (!v) return std::nullopt;
  return std::get<bool>(*v);
}

const GroundTerm* Assignment::term(const Var& v) const {
  const Value* val = find(v);
  return val ? std::get_if<GroundTerm>(val) : nullptr;
}

void Assignment::set(Var v, Value value) {
  if (v.is_sync() != std::holds_alternative<bool>(value))
    throw PreconditionError("value kind does not match variable " + to_string(v));
  auto it = lower(bindings_, v);
  if (it != bindings_.end() && it->var == v) {
    it->value = std::move(value);
    return;
  }
  bindings_.insert(it, Binding{std::move(v), std::move(value)});
}

void Assignment::erase(const Var& v) {
  auto it = lower(bindings_, v);
  if (it != bindings_.end() && it->var == v) bindings_.erase(it);
}

bool Assignment::subset_of(const Assignment& other) const {
  if (size() > other.size()) return false;
  for (const auto& b : bindings_) {
    const Value* v = other.find(b.var);
    if (!v || *v != b.value) return false;
  }
  return true;
}

std::set<Var> Assignment::domain() const {
  std::set<Var> out;
  for (const auto& b : bindings_) out.insert(b.var);
  return out;
}

bool Assignment::has_noflow() const {
  return std::any_of(bindings_.begin(), bindings_.end(), [](const Binding& b) {
    const auto* t = std::get_if<GroundTerm>(&b.value);
    return t && t->is_noflow();
  });
}

Assignment Assignment::restrict(const std::set<Var>& vars) const {
  Assignment out;
  for (const auto& b : bindings_)
    if (vars.count(b.var)) out.bindings_.push_back(b);
  return out;
}

bool compatible(const Assignment& a, const Assignment& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->var < j->var) {
      ++i;
    } else if (j->var < i->var) {
      ++j;
    } else {
      if (i->value != j->value) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

std::optional<Assignment> try_unite(const Assignment& a, const Assignment& b) {
  if (!compatible(a, b)) return std::nullopt;
  Assignment out = a;
  for (const auto& bind : b)
    if (!out.contains(bind.var)) out.set(bind.var, bind.value);
  return out;
}

Assignment unite(const Assignment& a, const Assignment& b) {
  auto u = try_unite(a, b);
  if (!u)
    throw PreconditionError("union of incompatible assignments " + to_string(a) + " and " +
                            to_string(b));
  return std::move(*u);
}

std::string to_string(const Assignment& a) {
  std::string s = "{";
  bool first = true;
  for (const auto& b : a) {
    if (!first) s += ',';
    first = false;
    s += to_string(b.var);
    s += '=';
    s += to_string(b.value);
  }
  s += '}';
  return s;
}

std::size_t AssignmentHash::operator()(const Assignment& a) const {
  std::size_t h = 0;
  std::hash<std::string> hs;
  for (const auto& b : a) {
    h = h * 1000003u ^ hs(b.var.name) ^ (static_cast<std::size_t>(b.var.kind) << 7);
    h = h * 1000003u ^ hs(to_string(b.value));
  }
  return h;
}

void for_each_assignment(const std::vector<Var>& vars, const std::vector<Options>& options,
                         const std::function<bool(const Assignment&)>& fn) {
  if (vars.size() != options.size())
    throw PreconditionError("for_each_assignment: size mismatch");
  for (const auto& o : options)
    if (o.empty()) return;
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (const auto& v = options[i][idx[i]]) a.set(vars[i], *v);
    if (!fn(a)) return;
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++idx[i] < options[i].size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (vars.empty()) return;
  }
}

Universe::Universe(std::vector<GroundTerm> data, bool noflow_enabled)
    : data_(std::move(data)), noflow_(noflow_enabled) {
  if (data_.empty()) throw LoadError("universe must not be empty");
  std::set<GroundTerm> seen;
  for (const auto& d : data_) {
    if (d.is_noflow()) throw LoadError("NOFLOW cannot be a member of the universe");
    if (!seen.insert(d).second) throw LoadError("duplicate universe member " + d.str());
  }
  default_ = data_.front();
}

bool Universe::contains(const GroundTerm& t) const {
  return std::find(data_.begin(), data_.end(), t) != data_.end();
}

Universe Universe::classical() const {
  Universe u = *this;
  u.noflow_ = true;
  return u;
}

Universe Universe::partial() const {
  Universe u = *this;
  u.noflow_ = false;
  return u;
}

void Universe::set_state_domain(const std::string& prim, std::vector<GroundTerm> values) {
  state_domains_[prim] = std::move(values);
}

const std::vector<GroundTerm>* Universe::state_domain(const std::string& prim) const {
  auto it = state_domains_.find(prim);
  return it == state_domains_.end() ? nullptr : &it->second;
}

std::vector<GroundTerm> Universe::values(const Var& v) const {
  switch (v.kind) {
    case VarKind::sync:
      throw PreconditionError("sync variable " + v.name + " has no term domain");
    case VarKind::state:
    case VarKind::state_next:
      if (const auto* d = state_domain(v.name)) return *d;
      return data_;
    case VarKind::comm:
      return data_;
    case VarKind::dataflow: {
      std::vector<GroundTerm> out = data_;
      if (noflow_) out.push_back(GroundTerm::noflow());
      return out;
    }
  }
  return data_;
}

void Universe::set_default_datum(GroundTerm d) {
  if (!contains(d)) throw LoadError("default datum " + d.str() + " is not in the universe");
  default_ = std::move(d);
}

}  // namespace intercon
