#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ldwb/term.hpp"

namespace ldwb {

class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class MissingAssignment : public Error {
public:
    using Error::Error;
};

inline constexpr int kDefaultMaxLaverIndex = 14;

/// The Laver table A_n: the unique left-distributive operation on
/// {1, ..., 2^n} with p*1 = p+1 (2^n*1 = 1). Values and indices are 1-based.
class LaverTable {
public:
    using Value = std::uint32_t;

    /// Wraps raw row-major entries without checking them; see `validate`.
    LaverTable(int n, std::vector<Value> entries);

    int n() const noexcept { return n_; }
    Value order() const noexcept { return order_; }

    Value operator()(Value p, Value q) const noexcept
    {
        return entries_[static_cast<std::size_t>(p - 1) * order_ + (q - 1)];
    }

    const std::vector<Value>& entries() const noexcept { return entries_; }

    friend bool operator==(const LaverTable&, const LaverTable&) = default;

private:
    int n_;
    Value order_;
    std::vector<Value> entries_;
};

/// Builds A_n. Throws LimitExceeded when n is outside [0, max_n].
LaverTable build_table(int n, int max_n = kDefaultMaxLaverIndex);

/// Shared, lazily built A_n for small n (n <= 10). Thread-safe.
const LaverTable& cached_table(int n);

using Assignment = std::map<std::string, LaverTable::Value>;

/// Evaluates `t` bottom-up with `*` interpreted by `table`.
LaverTable::Value eval_term(const LaverTable& table, const Term& t, const Assignment& assignment);

/// Least power-of-two period of row p.
LaverTable::Value row_period(const LaverTable& table, LaverTable::Value p);

/// Checks p*(q*r) = (p*q)*(p*r) for all triples.
bool verify_ld_exhaustive(const LaverTable& table);

/// Throws ValidationError unless every entry is in range and the successor
/// column holds. With `full_ld`, also checks the left-distributive law.
void validate(const LaverTable& table, bool full_ld = false);

// Binary format: "LAVR", version 0x01, u8 n, 2^{2n} little-endian u32
// entries, row-major.
void save_table(const LaverTable& table, const std::filesystem::path& path);
LaverTable load_table(const std::filesystem::path& path, bool full_ld_check = false,
                      int max_n = kDefaultMaxLaverIndex);

std::vector<std::uint8_t> encode_table(const LaverTable& table);
LaverTable decode_table(const std::vector<std::uint8_t>& bytes, bool full_ld_check = false,
                        int max_n = kDefaultMaxLaverIndex);

/// {"n":..., "rows":[[...], ...]}
std::string table_to_json(const LaverTable& table);

}  // namespace ldwb
