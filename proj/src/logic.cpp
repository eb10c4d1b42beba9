#include "bunchkit/logic.hpp"

#include <array>
#include <stdexcept>

namespace bunchkit {

namespace {
constexpr std::array<std::string_view, 10> kKindNames = {"LGL", "ILGL", "BI",   "BBI",   "SML",
                                                         "DMBI", "CBI", "BiBI", "BiBBI", "CKBI"};
}

std::string_view kind_name(Kind k) { return kKindNames[static_cast<int>(k)]; }

std::optional<Kind> kind_from_name(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == s) return static_cast<Kind>(i);
  return std::nullopt;
}

std::string_view sigma_name(Sigma s) {
  switch (s) {
    case Sigma::Associativity: return "Associativity";
    case Sigma::MbotWeakening: return "MbotWeakening";
    case Sigma::MbotContraction: return "MbotContraction";
    case Sigma::MorContraction: return "MorContraction";
    case Sigma::WeakDistributivity: return "WeakDistributivity";
  }
  return "?";
}

std::optional<Sigma> sigma_from_name(std::string_view s) {
  for (Sigma x : kAllSigma)
    if (sigma_name(x) == s) return x;
  return std::nullopt;
}

std::string_view modal_name(Modal m) {
  switch (m) {
    case Modal::None: return "none";
    case Modal::S4: return "S4";
    case Modal::S5: return "S5";
  }
  return "?";
}

std::optional<Modal> modal_from_name(std::string_view s) {
  if (s == "none") return Modal::None;
  if (s == "S4") return Modal::S4;
  if (s == "S5") return Modal::S5;
  return std::nullopt;
}

bool is_boolean(Kind k) {
  switch (k) {
    case Kind::LGL:
    case Kind::BBI:
    case Kind::SML:
    case Kind::CBI:
    case Kind::BiBBI:
    case Kind::CKBI: return true;
    default: return false;
  }
}

bool has_unit(Kind k) { return k != Kind::LGL && k != Kind::ILGL; }
bool is_commutative(Kind k) { return has_unit(k); }
bool is_dm(Kind k) { return k == Kind::DMBI || k == Kind::CBI; }
bool is_bi_bi(Kind k) { return k == Kind::BiBI || k == Kind::BiBBI; }

Kind base_kind(Kind k) {
  switch (k) {
    case Kind::LGL:
    case Kind::ILGL:
    case Kind::BI:
    case Kind::BBI: return k;
    case Kind::DMBI:
    case Kind::BiBI: return Kind::BI;
    default: return Kind::BBI;
  }
}

void validate_logic(const Logic& l) {
  if (l.sigma && !is_bi_bi(l.kind))
    throw std::invalid_argument("sigma flags are only legal for BiBI/BiBBI, not " + std::string(kind_name(l.kind)));
  if (l.sigma & ~0x1f) throw std::invalid_argument("unknown sigma flag");
  if (l.modal != Modal::None && l.kind != Kind::SML)
    throw std::invalid_argument("modal class is only legal for SML, not " + std::string(kind_name(l.kind)));
  if (l.fo && l.kind != Kind::BI && l.kind != Kind::BBI)
    throw std::invalid_argument("the pointer fragment is only available for BI/BBI");
}

Logic make_logic(Kind k, uint8_t sigma, Modal modal, bool fo) {
  Logic l{k, sigma, modal, fo};
  validate_logic(l);
  return l;
}

std::string logic_name(const Logic& l) {
  std::string s(kind_name(l.kind));
  for (Sigma x : kAllSigma)
    if (l.has(x)) s += "+" + std::string(sigma_name(x));
  if (l.modal != Modal::None) s += "+" + std::string(modal_name(l.modal));
  if (l.fo) s += "+fo";
  return s;
}

}  // namespace bunchkit
