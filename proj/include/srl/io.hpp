#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "srl/budget.hpp"
#include "srl/generators.hpp"
#include "srl/group.hpp"
#include "srl/regularity.hpp"
#include "srl/set.hpp"
#include "srl/stability.hpp"

namespace srl {

using Json = nlohmann::ordered_json;

class IoError : public Error {
 public:
  using Error::Error;
};

// "p n d", then d annihilator rows of n digits
void write_subspace(std::ostream& os, const Subspace& H);
Subspace read_subspace(std::istream& is);

// "p n", then one element per line
void write_set_text(std::ostream& os, const SetIndicator& A);
SetIndicator read_set_text(std::istream& is);

// "SRL2", n as u32 little-endian, ceil(2^n / 8) bytes of bits in codec order (p = 2 only)
void write_set_binary(std::ostream& os, const SetIndicator& A);
SetIndicator read_set_binary(std::istream& is);

// Chooses the format from the first four bytes.
SetIndicator read_set(std::istream& is);
SetIndicator load_set(const std::string& path);
void save_set(const std::string& path, const SetIndicator& A, bool binary = false);

// "order k" then k a-lines and k b-lines; "tree d" then 2^d lines
// "eta <bits> <digits>" and 2^d - 1 lines "rho <bits> <digits>", with "-"
// for the empty string. An optional "source <tag>" line follows the header.
void write_witness(std::ostream& os, const OrderWitness& w, const std::string& source = "");
void write_witness(std::ostream& os, const TreeWitness& w, const std::string& source = "");

struct WitnessFile {
  std::variant<OrderWitness, TreeWitness> witness;
  std::string source;
};

WitnessFile read_witness(std::istream& is, const GroupContext& ctx);

Json to_json(const GroupElement& x);
Json to_json(const Functional& t);
Json to_json(const Subspace& H);
Json to_json(const Magnitude& m);
Json to_json(const OrderWitness& w);
Json to_json(const TreeWitness& w);
Json to_json(const CoverCertificate& c);
Json to_json(const UniformityReport& r);
Json to_json(const GoodnessReport& r, bool per_coset = true);
Json to_json(const RefinementStep& s);
Json to_json(const Anomaly& a);
Json to_json(const GoodSubspace& g);
Json to_json(const FailureTrace& f);
Json to_json(const TreeBuildInfo& info);
Json to_json(const Inconclusive& i);
Json to_json(const StabilityBudget& b);
Json to_json(const CosetApproximation& c);
Json to_json(const PartitionReport& r);
Json to_json(const FixtureSpec& s);

}  // namespace srl
