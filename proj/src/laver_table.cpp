#include "ldwb/laver_table.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <memory>
#include <mutex>

#include "json.hpp"

namespace ldwb {

namespace {

constexpr std::array<char, 4> kMagic = {'L', 'A', 'V', 'R'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::size_t kHeaderSize = 6;

}  // namespace

LaverTable::LaverTable(int n, std::vector<Value> entries)
    : n_(n), order_(Value{1} << n), entries_(std::move(entries))
{
    if (n < 0 || n > 16) {
        throw LimitExceeded("Laver table index " + std::to_string(n) + " out of range");
    }
    if (entries_.size() != static_cast<std::size_t>(order_) * order_) {
        throw FormatError("Laver table A_" + std::to_string(n) + " needs " +
                          std::to_string(static_cast<std::size_t>(order_) * order_) +
                          " entries, got " + std::to_string(entries_.size()));
    }
}

LaverTable build_table(int n, int max_n)
{
    if (n < 0 || n > max_n) {
        throw LimitExceeded("Laver table index " + std::to_string(n) + " outside [0, " +
                            std::to_string(max_n) + "]");
    }
    using Value = LaverTable::Value;
    const Value N = Value{1} << n;
    std::vector<Value> e(static_cast<std::size_t>(N) * N);
    auto at = [&](Value p, Value q) -> Value& {
        return e[static_cast<std::size_t>(p - 1) * N + (q - 1)];
    };
    // Row N is the identity. For p < N every p*q exceeds p, so the
    // recursion p*(q+1) = (p*q)*(p+1) only reads rows that are already filled.
    for (Value q = 1; q <= N; ++q) {
        at(N, q) = q;
    }
    for (Value p = N - 1; p >= 1; --p) {
        at(p, 1) = p + 1;
        for (Value q = 1; q < N; ++q) {
            at(p, q + 1) = at(at(p, q), p + 1);
        }
    }
    return LaverTable(n, std::move(e));
}

const LaverTable& cached_table(int n)
{
    static constexpr int kMaxCached = 10;
    static std::once_flag flags[kMaxCached + 1];
    static std::unique_ptr<LaverTable> tables[kMaxCached + 1];
    if (n < 0 || n > kMaxCached) {
        throw LimitExceeded("cached Laver tables cover A_0..A_10");
    }
    std::call_once(flags[n], [n] { tables[n] = std::make_unique<LaverTable>(build_table(n)); });
    return *tables[n];
}

LaverTable::Value eval_term(const LaverTable& table, const Term& t, const Assignment& assignment)
{
    if (t.is_leaf()) {
        const auto it = assignment.find(t.generator().name);
        if (it == assignment.end()) {
            throw MissingAssignment("no value assigned to generator '" + t.generator().name + "'");
        }
        if (it->second < 1 || it->second > table.order()) {
            throw MissingAssignment("value " + std::to_string(it->second) + " for '" +
                                    t.generator().name + "' is outside A_" +
                                    std::to_string(table.n()));
        }
        return it->second;
    }
    return table(eval_term(table, t.left(), assignment), eval_term(table, t.right(), assignment));
}

LaverTable::Value row_period(const LaverTable& table, LaverTable::Value p)
{
    using Value = LaverTable::Value;
    if (p < 1 || p > table.order()) {
        throw Error("row " + std::to_string(p) + " outside A_" + std::to_string(table.n()));
    }
    for (Value period = 1; period < table.order(); period <<= 1) {
        bool periodic = true;
        for (Value q = 1; q + period <= table.order() && periodic; ++q) {
            periodic = table(p, q + period) == table(p, q);
        }
        if (periodic) {
            return period;
        }
    }
    return table.order();
}

bool verify_ld_exhaustive(const LaverTable& table)
{
    using Value = LaverTable::Value;
    const Value N = table.order();
    for (Value p = 1; p <= N; ++p) {
        for (Value q = 1; q <= N; ++q) {
            const Value pq = table(p, q);
            for (Value r = 1; r <= N; ++r) {
                if (table(p, table(q, r)) != table(pq, table(p, r))) {
                    return false;
                }
            }
        }
    }
    return true;
}

void validate(const LaverTable& table, bool full_ld)
{
    using Value = LaverTable::Value;
    const Value N = table.order();
    for (const Value v : table.entries()) {
        if (v < 1 || v > N) {
            throw ValidationError("entry " + std::to_string(v) + " outside 1.." +
                                  std::to_string(N));
        }
    }
    for (Value p = 1; p <= N; ++p) {
        const Value expected = p == N ? 1 : p + 1;
        if (table(p, 1) != expected) {
            throw ValidationError("successor column violated at row " + std::to_string(p) +
                                  ": " + std::to_string(p) + "*1 = " +
                                  std::to_string(table(p, 1)) + ", expected " +
                                  std::to_string(expected));
        }
    }
    if (full_ld && !verify_ld_exhaustive(table)) {
        throw ValidationError("left-distributive law violated");
    }
}

std::vector<std::uint8_t> encode_table(const LaverTable& table)
{
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + table.entries().size() * 4);
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    out.push_back(kVersion);
    out.push_back(static_cast<std::uint8_t>(table.n()));
    for (const auto v : table.entries()) {
        for (int shift = 0; shift < 32; shift += 8) {
            out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFFu));
        }
    }
    return out;
}

LaverTable decode_table(const std::vector<std::uint8_t>& bytes, bool full_ld_check, int max_n)
{
    if (bytes.size() < kHeaderSize) {
        throw FormatError("truncated header (" + std::to_string(bytes.size()) + " bytes)");
    }
    if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw FormatError("bad magic");
    }
    if (bytes[4] != kVersion) {
        throw FormatError("unsupported version " + std::to_string(bytes[4]));
    }
    const int n = bytes[5];
    if (n > max_n) {
        throw FormatError("table index " + std::to_string(n) + " above maximum " +
                          std::to_string(max_n));
    }
    const std::size_t count = std::size_t{1} << (2 * n);
    if (bytes.size() != kHeaderSize + 4 * count) {
        throw FormatError("expected " + std::to_string(kHeaderSize + 4 * count) +
                          " bytes for A_" + std::to_string(n) + ", got " +
                          std::to_string(bytes.size()));
    }
    std::vector<LaverTable::Value> entries(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint8_t* b = bytes.data() + kHeaderSize + 4 * i;
        entries[i] = static_cast<LaverTable::Value>(b[0]) |
                     static_cast<LaverTable::Value>(b[1]) << 8 |
                     static_cast<LaverTable::Value>(b[2]) << 16 |
                     static_cast<LaverTable::Value>(b[3]) << 24;
    }
    LaverTable table(n, std::move(entries));
    validate(table, full_ld_check);
    return table;
}

void save_table(const LaverTable& table, const std::filesystem::path& path)
{
    const auto bytes = encode_table(table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

LaverTable load_table(const std::filesystem::path& path, bool full_ld_check, int max_n)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read from '" + path.string() + "' failed");
    }
    return decode_table(bytes, full_ld_check, max_n);
}

std::string table_to_json(const LaverTable& table)
{
    nlohmann::json rows = nlohmann::json::array();
    for (LaverTable::Value p = 1; p <= table.order(); ++p) {
        nlohmann::json row = nlohmann::json::array();
        for (LaverTable::Value q = 1; q <= table.order(); ++q) {
            row.push_back(table(p, q));
        }
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"n", table.n()}, {"rows", std::move(rows)}}.dump();
}

}  // namespace ldwb
