#pragma once

#include <string>
#include <utility>

namespace heinzcert {

/// Where an input sits relative to an inequality's hypotheses. Vacuous
/// inputs are ones where the claim holds only as a limit (a side diverges),
/// so there is nothing finite to evaluate.
class DomainStatus {
 public:
  enum class Kind { kInside, kVacuous, kOutside };

  static DomainStatus inside() { return DomainStatus(Kind::kInside, {}); }
  static DomainStatus vacuous(std::string why) { return DomainStatus(Kind::kVacuous, std::move(why)); }
  static DomainStatus outside(std::string why) { return DomainStatus(Kind::kOutside, std::move(why)); }

  Kind kind() const { return kind_; }
  bool is_inside() const { return kind_ == Kind::kInside; }
  bool is_vacuous() const { return kind_ == Kind::kVacuous; }
  bool is_outside() const { return kind_ == Kind::kOutside; }
  const std::string& reason() const { return reason_; }

 private:
  DomainStatus(Kind k, std::string r) : kind_(k), reason_(std::move(r)) {}
  Kind kind_;
  std::string reason_;
};

}  // namespace heinzcert
