#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "prodlab/bigint.hpp"
#include "prodlab/fq_additive.hpp"
#include "prodlab/growth.hpp"
#include "prodlab/subset.hpp"

namespace prodlab::report {

using Json = nlohmann::ordered_json;

inline Json big(const BigInt& v) { return to_decimal(v); }
inline Json big(const Rational& v) { return to_decimal(v); }

Json set_json(const Subset& s);
Subset set_from_json(const GroupPtr& g, const Json& j);

Json versions();

/// Report skeleton with the fixed key order.
Json make_report(const std::string& command, Json config);

// Witness records. Each carries everything needed to recheck its claim.
Json conjugate_cover_witness(const Group& g, const std::vector<Subset>& sets, const std::vector<Element>& conjugators);
Json skew_product_witness(const Subset& a, const Subset& b, Element sigma, std::size_t size);
Json skew_expectation_witness(const Subset& a, const Subset& b, std::size_t cls, const SkewExpectation& r);
Json concentration_witness(const Subset& a, const Concentration& c);
Json umvirate_density_witness(const Subset& a, const GlobalityLevel& lv);
Json umvirate_factorization_witness(const Permutation& sigma, const std::vector<int>& I, const std::vector<int>& J,
                                    const std::vector<int>& K, const PermutationTripleCover& c);
Json dilate_cover_witness(const fq::MatrixSpace& space, const std::vector<fq::CodeSet>& sets, const std::vector<fq::GlPair>& pairs);
Json akblcm_witness(const fq::Matrix& T, const fq::Akblcm& f);

struct ClaimResult {
  std::string type;
  bool pass = false;
  std::string detail;
};

/// Rechecks one witness record; throws SchemaMismatch on malformed input.
ClaimResult verify_witness_record(const Json& w);

}  // namespace prodlab::report
