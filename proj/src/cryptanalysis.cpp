#include "fieldcrypt/cryptanalysis.hpp"

#include "fieldcrypt/codec.hpp"
#include "fieldcrypt/errors.hpp"
#include "fieldcrypt/rotation.hpp"
#include "fieldcrypt/utf8.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <thread>
#include <tuple>

namespace fieldcrypt {

namespace {

using int128 = __int128;

// Everything the per-tuple test needs, precomputed once per observation.
struct PreparedObservation {
    std::int64_t k1 = 0;
    std::array<std::int64_t, kSchemeCount> k2_by_z{}; // K2 under each char scheme
    std::int64_t integer_part = 0;
    int fraction_value = 0;             // 0..99
    std::u32string ciphertext_symbols;  // observed ciphertext as code points
};

PreparedObservation prepare(const Observation& obs) {
    PreparedObservation prep;
    const RecordDate date = parse_record_date(obs.date);
    const RecordTime time = parse_record_time(obs.time);
    const CashierId cashier = validate_cashier_id(obs.cashierid);
    prep.k1 = compute_k1(date, time);
    for (int z = 1; z <= kSchemeCount; ++z) {
        prep.k2_by_z[static_cast<std::size_t>(z - 1)] =
            compute_k2(cashier, char_value_scheme(z));
    }
    prep.integer_part = obs.amount.integer_part;
    prep.fraction_value = (obs.amount.fraction_part[0] - '0') * 10 +
                          (obs.amount.fraction_part[1] - '0');
    prep.ciphertext_symbols = utf8::decode(obs.ciphertext);
    if (prep.ciphertext_symbols.size() < 2) {
        throw Error(ErrorCode::CiphertextTooShort, "observation ciphertext too short");
    }
    return prep;
}

// True iff encrypting the observation under this tuple reproduces its
// ciphertext symbol-for-symbol. Avoids string allocation in the sweep loop.
bool tuple_matches(const PreparedObservation& obs, int p, int q, int m, int n,
                   int z, int w) {
    static constexpr std::int64_t kWidthBound = std::numeric_limits<std::int64_t>::max();

    std::int64_t np = 1, mq = 1;
    for (int i = 0; i < p; ++i) np *= n;
    for (int i = 0; i < q; ++i) mq *= m;

    const int128 c1 = static_cast<int128>(np) * obs.k1 * obs.integer_part +
                      static_cast<int128>(mq) * obs.k1;
    if (c1 <= 0 || c1 > kWidthBound) {
        return false;
    }
    const int128 c2 = c1 + obs.k2_by_z[static_cast<std::size_t>(z - 1)];
    if (c2 > kWidthBound) {
        return false;
    }

    char digits[24];
    const auto [end, ec] =
        std::to_chars(digits, digits + sizeof digits, static_cast<std::int64_t>(c2));
    std::size_t len = static_cast<std::size_t>(end - digits);
    const char* first = digits;
    char padded = '0';
    bool has_pad = false;
    if (len % 2 != 0) {
        has_pad = true;
        ++len;
    }

    const std::u32string& expected = obs.ciphertext_symbols;
    if (expected.size() != len / 2 + 1) {
        return false;
    }
    const PairSymbolScheme& pairs = pair_symbol_scheme(w);
    if (pairs.symbol(obs.fraction_value) != expected[0]) {
        return false;
    }
    for (std::size_t i = 0; i < len; i += 2) {
        const char hi = (i == 0 && has_pad) ? padded : first[i - (has_pad ? 1 : 0)];
        const char lo = first[i + 1 - (has_pad ? 1 : 0)];
        const int v = (hi - '0') * 10 + (lo - '0');
        if (pairs.symbol(v) != expected[i / 2 + 1]) {
            return false;
        }
    }
    return true;
}

int parse_bound_int(std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorCode::SettingsFormatError,
                    "bounds element '" + std::string(text) + "' is not an integer");
    }
    return value;
}

std::pair<int, int> parse_range(std::string_view text) {
    const auto dash = text.find('-');
    if (dash == std::string_view::npos) {
        const int v = parse_bound_int(text);
        return {v, v};
    }
    return {parse_bound_int(text.substr(0, dash)), parse_bound_int(text.substr(dash + 1))};
}

std::string random_cashier_text(Rng& rng) {
    const auto len = rng.uniform(kCashierIdMinLength, kCashierIdMaxLength);
    std::string text;
    text.reserve(static_cast<std::size_t>(len));
    for (std::int64_t i = 0; i < len; ++i) {
        text.push_back(CharValueScheme::alphabet_char(static_cast<int>(rng.uniform(0, 35))));
    }
    return text;
}

} // namespace

std::uint64_t ParamBounds::tuple_count() const {
    const auto span = [](int lo, int hi) { return static_cast<std::uint64_t>(hi - lo + 1); };
    return span(p_lo, p_hi) * span(q_lo, q_hi) * span(m_lo, m_hi) * span(n_lo, n_hi) *
           span(z_lo, z_hi) * span(w_lo, w_hi);
}

ParamBounds parse_bounds(std::string_view spec) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = spec.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(spec.substr(start));
            break;
        }
        fields.push_back(spec.substr(start, comma - start));
        start = comma + 1;
    }
    if (fields.size() != 6) {
        throw Error(ErrorCode::SettingsFormatError,
                    "bounds must be six comma-separated ranges in p,q,m,n,z,w order");
    }
    ParamBounds bounds;
    std::tie(bounds.p_lo, bounds.p_hi) = parse_range(fields[0]);
    std::tie(bounds.q_lo, bounds.q_hi) = parse_range(fields[1]);
    std::tie(bounds.m_lo, bounds.m_hi) = parse_range(fields[2]);
    std::tie(bounds.n_lo, bounds.n_hi) = parse_range(fields[3]);
    std::tie(bounds.z_lo, bounds.z_hi) = parse_range(fields[4]);
    std::tie(bounds.w_lo, bounds.w_hi) = parse_range(fields[5]);

    const auto check = [](int lo, int hi, int min, int max, const char* name) {
        if (lo < min || hi > max || lo > hi) {
            throw Error(ErrorCode::SettingsRangeError,
                        std::string("bounds for ") + name + " outside [" +
                            std::to_string(min) + ", " + std::to_string(max) + "]");
        }
    };
    check(bounds.p_lo, bounds.p_hi, 0, 4, "p");
    check(bounds.q_lo, bounds.q_hi, 0, 4, "q");
    check(bounds.m_lo, bounds.m_hi, 1, 50, "m");
    check(bounds.n_lo, bounds.n_hi, 1, 50, "n");
    check(bounds.z_lo, bounds.z_hi, 1, kSchemeCount, "z");
    check(bounds.w_lo, bounds.w_hi, 1, kSchemeCount, "w");
    return bounds;
}

bool CandidateSet::contains(const CryptoParams& params) const {
    return std::any_of(tuples.begin(), tuples.end(),
                       [&](const CryptoParams& t) { return t == params; });
}

CandidateSet recover_params(const std::vector<Observation>& observations,
                            const ParamBounds& bounds, unsigned threads) {
    if (observations.empty()) {
        throw Error(ErrorCode::NoObservations, "at least one observation is required");
    }
    std::vector<PreparedObservation> prepared;
    prepared.reserve(observations.size());
    for (const auto& obs : observations) {
        prepared.push_back(prepare(obs));
    }

    const std::uint64_t total = bounds.tuple_count();
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total, 1)));

    const std::uint64_t q_span = static_cast<std::uint64_t>(bounds.q_hi - bounds.q_lo + 1);
    const std::uint64_t m_span = static_cast<std::uint64_t>(bounds.m_hi - bounds.m_lo + 1);
    const std::uint64_t n_span = static_cast<std::uint64_t>(bounds.n_hi - bounds.n_lo + 1);
    const std::uint64_t z_span = static_cast<std::uint64_t>(bounds.z_hi - bounds.z_lo + 1);
    const std::uint64_t w_span = static_cast<std::uint64_t>(bounds.w_hi - bounds.w_lo + 1);

    const auto tuple_at = [&](std::uint64_t flat) {
        const int w = bounds.w_lo + static_cast<int>(flat % w_span);
        flat /= w_span;
        const int z = bounds.z_lo + static_cast<int>(flat % z_span);
        flat /= z_span;
        const int n = bounds.n_lo + static_cast<int>(flat % n_span);
        flat /= n_span;
        const int m = bounds.m_lo + static_cast<int>(flat % m_span);
        flat /= m_span;
        const int q = bounds.q_lo + static_cast<int>(flat % q_span);
        flat /= q_span;
        const int p = bounds.p_lo + static_cast<int>(flat);
        return std::array<int, 6>{p, q, m, n, z, w};
    };

    // Chunked work stealing; results carry their flat index so the merged
    // set is deterministic regardless of scheduling.
    constexpr std::uint64_t kChunk = 8192;
    std::atomic<std::uint64_t> next{0};
    std::vector<std::vector<std::uint64_t>> found_per_thread(threads);

    const auto worker = [&](unsigned tid) {
        auto& found = found_per_thread[tid];
        while (true) {
            const std::uint64_t begin = next.fetch_add(kChunk);
            if (begin >= total) {
                break;
            }
            const std::uint64_t end = std::min(begin + kChunk, total);
            for (std::uint64_t flat = begin; flat < end; ++flat) {
                const auto [p, q, m, n, z, w] = tuple_at(flat);
                bool all = true;
                for (const auto& obs : prepared) {
                    if (!tuple_matches(obs, p, q, m, n, z, w)) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    found.push_back(flat);
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker, t);
    }
    for (auto& t : pool) {
        t.join();
    }

    std::vector<std::uint64_t> hits;
    for (const auto& partial : found_per_thread) {
        hits.insert(hits.end(), partial.begin(), partial.end());
    }
    std::sort(hits.begin(), hits.end());

    CandidateSet result;
    result.space_size = total;
    result.tuples.reserve(hits.size());
    for (const std::uint64_t flat : hits) {
        const auto [p, q, m, n, z, w] = tuple_at(flat);
        CryptoParams params;
        params.p = p;
        params.q = q;
        params.m = m;
        params.n = n;
        params.z = z;
        params.w = w;
        params.sign = +1;
        result.tuples.push_back(params);
    }
    return result;
}

GroupingSpace grouping_space(int n) {
    if (n < 2 || n % 2 != 0) {
        throw Error(ErrorCode::InvalidLength,
                    "length must be a positive even integer, got " + std::to_string(n));
    }
    GroupingSpace space;
    space.ungrouped_count = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(n));
    space.grouped_count = boost::multiprecision::pow(BigInt(100), static_cast<unsigned>(n / 2));
    return space;
}

TamperStats tamper_detection_rate(std::uint64_t trials, Rng& rng,
                                  const TamperTrialConfig& config) {
    if (trials == 0) {
        throw Error(ErrorCode::InvalidTrialCount, "trial count must be at least 1");
    }
    TamperStats stats;
    stats.trials = trials;

    CryptoParams prev; // demo tuple; never emitted by the generator
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const CryptoParams params = next_params(prev, rng);
        prev = params;

        RecordDate date;
        RecordTime time;
        do {
            date.dd = static_cast<int>(rng.uniform(1, 31));
            date.mm = static_cast<int>(rng.uniform(1, 12));
            date.yy = static_cast<int>(rng.uniform(0, 99));
            time.hh = static_cast<int>(rng.uniform(0, 23));
            time.mm = static_cast<int>(rng.uniform(0, 59));
            time.ss = static_cast<int>(rng.uniform(0, 59));
        } while (time.hh + time.mm + date.yy == 0);

        const CashierId cashier{random_cashier_text(rng)};
        Amount amount;
        amount.integer_part = rng.uniform(0, config.max_integer_part);
        const int frac = static_cast<int>(rng.uniform(0, 99));
        amount.fraction_part = {static_cast<char>('0' + frac / 10),
                                static_cast<char>('0' + frac % 10)};

        const KeyPair keys = derive_keys(date, time, cashier, params.z);
        std::u32string symbols = utf8::decode(encrypt_amount(amount, keys, params));

        const std::size_t pos =
            config.target == TamperTarget::fraction
                ? 0
                : static_cast<std::size_t>(
                      rng.uniform(1, static_cast<std::int64_t>(symbols.size()) - 1));
        const PairSymbolScheme& pairs = pair_symbol_scheme(params.w);
        char32_t replacement;
        do {
            replacement = pairs.symbol(static_cast<int>(rng.uniform(0, 99)));
        } while (replacement == symbols[pos]);
        symbols[pos] = replacement;

        std::string mutated;
        for (const char32_t cp : symbols) {
            utf8::append(mutated, cp);
        }

        try {
            const Amount recovered = decrypt_amount(mutated, keys, params);
            if (recovered == amount) {
                ++stats.silent_same_amount;
            } else {
                ++stats.silent_wrong_amount;
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TamperDetected) {
                throw;
            }
            ++stats.detected;
        }
    }
    return stats;
}

} // namespace fieldcrypt
