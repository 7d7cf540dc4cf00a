#include <set>

#include "floc/logic.hpp"

namespace floc::logic {

Formula QuantifiedQuery::closure() const {
  Formula f = forall(auxiliaries, body);
  if (placeholder) f = exists({*placeholder}, f);
  return forall(inputs, f);
}

QuantifiedQuery build_query(Formula body, std::vector<SortedVar> inputs, std::optional<SortedVar> placeholder,
                            std::vector<SortedVar> auxiliaries) {
  if (body.sort() != Sort::Bool) throw SortError("query body must be boolean: " + to_text(body));
  std::map<std::string, Sort> declared;
  auto declare = [&](const SortedVar& v) {
    if (!declared.emplace(v.name, v.sort).second)
      throw Error("variable '" + v.name + "' classified twice");
  };
  for (const auto& v : inputs) declare(v);
  if (placeholder) declare(*placeholder);
  for (const auto& v : auxiliaries) declare(v);

  for (const auto& [name, sort] : free_vars(body)) {
    auto it = declared.find(name);
    if (it == declared.end()) throw UnclassifiedVariable(name);
    if (it->second != sort)
      throw SortError("variable '" + name + "' declared " + std::string(to_string(it->second)) + " but used as " +
                      std::string(to_string(sort)));
  }
  return {std::move(inputs), std::move(placeholder), std::move(auxiliaries), std::move(body)};
}

std::string_view to_string(UnknownReason r) {
  switch (r) {
    case UnknownReason::None: return "none";
    case UnknownReason::Timeout: return "timeout";
    case UnknownReason::Resource: return "resource";
    case UnknownReason::ProverUnknown: return "unknown";
    case UnknownReason::Crash: return "crash";
  }
  return "?";
}

std::string_view to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid: return "Valid";
    case Verdict::Kind::Invalid: return "Invalid";
    case Verdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

}  // namespace floc::logic
