#include "intercon/eval.hpp"

namespace intercon {

std::optional<GroundTerm> eval_term(const Assignment& sigma, const Interpretation& interp,
                                    const Term& t, Mode mode, Lookup lookup) {
  switch (t->kind) {
    case TermNode::Kind::var: {
      const GroundTerm* g = sigma.term(t->var);
      if (!g) return std::nullopt;
      return *g;
    }
    case TermNode::Kind::hole:
      throw PreconditionError("unsubstituted parameter " + t->name);
    case TermNode::Kind::apply:
    case TermNode::Kind::external: {
      std::vector<GroundTerm> args;
      args.reserve(t->args.size());
      bool noflow = false;
      for (const auto& a : t->args) {
        auto v = eval_term(sigma, interp, a, mode, lookup);
        if (!v) return std::nullopt;
        noflow = noflow || v->is_noflow();
        args.push_back(std::move(*v));
      }
      if (mode == Mode::classical && noflow) return GroundTerm::noflow();
      if (t->kind == TermNode::Kind::apply) return GroundTerm::apply(t->name, args);
      return interp.external_function(t->name, args, lookup);
    }
  }
  return std::nullopt;
}

}  // namespace intercon
