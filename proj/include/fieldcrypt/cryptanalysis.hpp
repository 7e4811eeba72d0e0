#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fieldcrypt/cipher.hpp"
#include "fieldcrypt/keys.hpp"
#include "fieldcrypt/rng.hpp"

namespace fieldcrypt {

using BigInt = boost::multiprecision::cpp_int;

/// One known-plaintext observation: the amount, its ciphertext, and the
/// public sibling fields the keys derive from.
struct Observation {
    Amount amount;
    std::string ciphertext;
    std::string date;
    std::string time;
    std::string cashierid;
};

/// Inclusive parameter ranges for the exhaustive sweep. The sweep covers
/// the raw cartesian product; tuples that violate the generation
/// constraints are tested like any other (the encryption formula does not
/// care, and the hidden tuple may be the demo tuple).
struct ParamBounds {
    int p_lo = 0, p_hi = 4;
    int q_lo = 0, q_hi = 4;
    int m_lo = 1, m_hi = 50;
    int n_lo = 1, n_hi = 50;
    int z_lo = 1, z_hi = 15;
    int w_lo = 1, w_hi = 15;

    std::uint64_t tuple_count() const;
};

/// Parses "pl-ph,ql-qh,ml-mh,nl-nh,zl-zh,wl-wh" (six inclusive ranges in
/// p,q,m,n,z,w order, e.g. "0-2,0-2,1-10,1-10,1-5,1-5").
ParamBounds parse_bounds(std::string_view spec);

struct CandidateSet {
    /// Tuples that re-encrypt every observation to its exact ciphertext,
    /// sorted lexicographically by (p,q,m,n,z,w).
    std::vector<CryptoParams> tuples;
    std::uint64_t space_size = 0;

    bool contains(const CryptoParams& params) const;
};

/// Exhaustive known-plaintext parameter recovery: tests every tuple in
/// bounds (sign fixed to +1) against all observations. The generating tuple
/// is always a member of the result. threads = 0 picks the hardware count.
CandidateSet recover_params(const std::vector<Observation>& observations,
                            const ParamBounds& bounds = {}, unsigned threads = 0);

struct GroupingSpace {
    BigInt ungrouped_count; // digit strings of length N: 10^N
    BigInt grouped_count;   // pair-symbol strings of length N/2: 100^(N/2)
};

/// Counts the raw preimage spaces for a padded digit string of even length
/// N, with and without pair grouping. The two counts are always equal.
GroupingSpace grouping_space(int n);

enum class TamperTarget {
    integer_region, // positions 1..end: covered by the divisibility check
    fraction,       // position 0: carries no redundancy
};

struct TamperTrialConfig {
    std::int64_t max_integer_part = 1'000'000;
    TamperTarget target = TamperTarget::integer_region;
};

struct TamperStats {
    std::uint64_t trials = 0;
    std::uint64_t detected = 0;
    std::uint64_t silent_same_amount = 0;
    std::uint64_t silent_wrong_amount = 0;

    double rate() const { return static_cast<double>(detected) / static_cast<double>(trials); }
};

/// Measures how often a single-symbol substitution in freshly encrypted
/// records trips the integrity check. Each trial draws a random valid
/// record and generator-emitted parameters, flips one symbol of the chosen
/// region to a different codebook symbol, and classifies the decryption
/// outcome. Deterministic for a given seed.
TamperStats tamper_detection_rate(std::uint64_t trials, Rng& rng,
                                  const TamperTrialConfig& config = {});

} // namespace fieldcrypt
