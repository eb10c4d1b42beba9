#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bunchkit {

enum class Kind { LGL, ILGL, BI, BBI, SML, DMBI, CBI, BiBI, BiBBI, CKBI };

// Optional frame conditions / axioms for BiBI and BiBBI.
enum class Sigma : uint8_t {
  Associativity = 1,
  MbotWeakening = 2,
  MbotContraction = 4,
  MorContraction = 8,
  WeakDistributivity = 16,
};
inline constexpr Sigma kAllSigma[] = {Sigma::Associativity, Sigma::MbotWeakening, Sigma::MbotContraction,
                                      Sigma::MorContraction, Sigma::WeakDistributivity};

enum class Modal { None, S4, S5 };

struct Logic {
  Kind kind = Kind::BBI;
  uint8_t sigma = 0;          // bitwise or of Sigma
  Modal modal = Modal::None;  // SML only
  bool fo = false;            // pointer-logic fragment, BI/BBI only

  bool has(Sigma s) const { return sigma & static_cast<uint8_t>(s); }
  friend bool operator==(const Logic&, const Logic&) = default;
};

std::string_view kind_name(Kind k);
std::optional<Kind> kind_from_name(std::string_view s);
std::string_view sigma_name(Sigma s);
std::optional<Sigma> sigma_from_name(std::string_view s);
std::string_view modal_name(Modal m);
std::optional<Modal> modal_from_name(std::string_view s);

// Throws std::invalid_argument when a flag is not legal for the kind.
void validate_logic(const Logic& l);
Logic make_logic(Kind k, uint8_t sigma = 0, Modal modal = Modal::None, bool fo = false);
std::string logic_name(const Logic& l);

// Classical additives: order is equality in frames, algebras are Boolean.
bool is_boolean(Kind k);
bool has_unit(Kind k);        // top-star present
bool is_commutative(Kind k);  // * commutative, so *- coincides with -*
bool is_dm(Kind k);           // DMBI or CBI
bool is_bi_bi(Kind k);        // BiBI or BiBBI
// The (B)BI / (I)LGL kind whose frame axioms a kind extends.
Kind base_kind(Kind k);

inline constexpr Kind kAllKinds[] = {Kind::LGL, Kind::ILGL, Kind::BI,   Kind::BBI,   Kind::SML,
                                     Kind::DMBI, Kind::CBI, Kind::BiBI, Kind::BiBBI, Kind::CKBI};

}  // namespace bunchkit
