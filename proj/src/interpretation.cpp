#include "intercon/interpretation.hpp"

#include <algorithm>

namespace intercon {

namespace {

std::string call_text(const std::string& sym, const std::vector<GroundTerm>& args) {
  return GroundTerm::apply(sym, args).str();
}

std::mutex& resolve_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::string to_string(const Lambda& l) {
  std::string s = "lambda(";
  for (std::size_t i = 0; i < l.params.size(); ++i) {
    if (i) s += ',';
    s += l.params[i];
  }
  s += ").";
  s += to_string(l.body);
  return s;
}

Formula instantiate(const Lambda& l, const Formula& call) {
  if (call->op != Op::ext_constr) throw PreconditionError("instantiate: not a constraint call");
  if (l.formula_arity != call->kids.size() ||
      l.params.size() != call->kids.size() + call->terms.size())
    throw ProtocolError("@" + call->name + " expects " + std::to_string(l.formula_arity) +
                        " formula and " + std::to_string(l.params.size() - l.formula_arity) +
                        " term arguments");
  return substitute(l.body, call->kids, call->terms);
}

Interpretation::Interpretation(const Interpretation& other) {
  std::lock_guard lock(other.mu_);
  internal_ = other.internal_;
  bottom_is_noflow_ = other.bottom_is_noflow_;
  resolver_ = other.resolver_;
  ext_ = other.ext_;
}

Interpretation& Interpretation::operator=(const Interpretation& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  internal_ = other.internal_;
  bottom_is_noflow_ = other.bottom_is_noflow_;
  resolver_ = other.resolver_;
  ext_ = other.ext_;
  return *this;
}

void Interpretation::set_internal(const std::string& pred, std::vector<GroundTerm> args,
                                  bool value) {
  internal_[{pred, std::move(args)}] = value;
}

bool Interpretation::has_internal(const std::string& pred) const {
  if (pred == kEquality) return true;
  auto it = internal_.lower_bound({pred, {}});
  return it != internal_.end() && it->first.first == pred;
}

std::optional<bool> Interpretation::internal(const std::string& pred,
                                             const std::vector<GroundTerm>& args) const {
  if (pred == kEquality && args.size() == 2) return args[0] == args[1];
  auto it = internal_.find({pred, args});
  if (it != internal_.end()) return it->second;
  if (std::any_of(args.begin(), args.end(), [](const GroundTerm& g) { return g.is_noflow(); }))
    return false;
  return std::nullopt;
}

std::optional<bool> Interpretation::internal_partial(
    const std::string& pred, const std::vector<std::optional<GroundTerm>>& args) const {
  std::vector<GroundTerm> ground;
  ground.reserve(args.size());
  for (const auto& a : args) {
    if (a) {
      ground.push_back(*a);
    } else if (bottom_is_noflow_) {
      ground.push_back(GroundTerm::noflow());
    } else {
      return std::nullopt;
    }
  }
  return internal(pred, ground);
}

Interpretation Interpretation::recoded() const {
  Interpretation out(*this);
  out.bottom_is_noflow_ = true;
  return out;
}

void Interpretation::attach(std::shared_ptr<ExternalResolver> resolver) {
  resolver_ = std::move(resolver);
}

std::optional<bool> Interpretation::external_predicate(const std::string& sym,
                                                       const std::vector<GroundTerm>& args,
                                                       Lookup mode) const {
  Key key{sym, args};
  {
    std::lock_guard lock(mu_);
    auto it = ext_.preds.find(key);
    if (it != ext_.preds.end()) return it->second;
  }
  if (mode == Lookup::cached_only) return std::nullopt;
  if (!resolver_) throw ResolutionNeeded(sym);
  std::lock_guard serial(resolve_mutex());
  {
    std::lock_guard lock(mu_);
    auto it = ext_.preds.find(key);
    if (it != ext_.preds.end()) return it->second;
  }
  auto value = resolver_->predicate(sym, args);
  std::lock_guard lock(mu_);
  ext_.preds[key] = value;
  ext_.log.push_back(call_text(sym, args) + ":" + (value ? (*value ? "true" : "false") : "unknown"));
  return value;
}

std::optional<GroundTerm> Interpretation::external_function(const std::string& sym,
                                                            const std::vector<GroundTerm>& args,
                                                            Lookup mode) const {
  Key key{sym, args};
  {
    std::lock_guard lock(mu_);
    auto it = ext_.funs.find(key);
    if (it != ext_.funs.end()) return it->second;
  }
  if (mode == Lookup::cached_only) return std::nullopt;
  if (!resolver_) throw ResolutionNeeded(sym);
  std::lock_guard serial(resolve_mutex());
  {
    std::lock_guard lock(mu_);
    auto it = ext_.funs.find(key);
    if (it != ext_.funs.end()) return it->second;
  }
  auto value = resolver_->function(sym, args);
  std::lock_guard lock(mu_);
  ext_.funs[key] = value;
  ext_.log.push_back(call_text(sym, args) + ":" + (value ? value->str() : "unknown"));
  return value;
}

std::optional<Lambda> Interpretation::external_constraint(const std::string& sym,
                                                          Lookup mode) const {
  {
    std::lock_guard lock(mu_);
    auto it = ext_.constrs.find(sym);
    if (it != ext_.constrs.end()) return it->second;
  }
  if (mode == Lookup::cached_only) return std::nullopt;
  if (!resolver_) throw ResolutionNeeded(sym);
  std::lock_guard serial(resolve_mutex());
  {
    std::lock_guard lock(mu_);
    auto it = ext_.constrs.find(sym);
    if (it != ext_.constrs.end()) return it->second;
  }
  auto value = resolver_->constraint(sym);
  std::lock_guard lock(mu_);
  ext_.constrs[sym] = value;
  ext_.log.push_back(sym + ":" + (value ? to_string(*value) : "unknown"));
  return value;
}

void Interpretation::set_external_predicate(const std::string& sym, std::vector<GroundTerm> args,
                                            std::optional<bool> value) {
  std::lock_guard lock(mu_);
  ext_.preds[{sym, std::move(args)}] = value;
}

void Interpretation::set_external_function(const std::string& sym, std::vector<GroundTerm> args,
                                           std::optional<GroundTerm> value) {
  std::lock_guard lock(mu_);
  ext_.funs[{sym, std::move(args)}] = std::move(value);
}

void Interpretation::set_external_constraint(const std::string& sym, std::optional<Lambda> value) {
  std::lock_guard lock(mu_);
  ext_.constrs[sym] = std::move(value);
}

bool Interpretation::external_empty() const {
  std::lock_guard lock(mu_);
  return ext_.preds.empty() && ext_.funs.empty() && ext_.constrs.empty();
}

void Interpretation::reset_external() {
  std::lock_guard lock(mu_);
  ext_ = ExternalStore{};
}

std::vector<std::string> Interpretation::resolution_log() const {
  std::lock_guard lock(mu_);
  return ext_.log;
}

}  // namespace intercon
