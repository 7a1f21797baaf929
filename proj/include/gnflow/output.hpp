#pragma once

#include <cstdio>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gnflow/errors.hpp"

namespace gnflow {

class OutputLocked : public Error {
public:
    using Error::Error;
};

/// Creates `dir` if needed and holds `dir/.lock` (exclusive create) until destruction.
class OutputLock {
public:
    explicit OutputLock(const std::filesystem::path& dir);
    ~OutputLock();
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    std::filesystem::path lock_;
};

/// Comma-separated table, flushed after every row.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(std::span<const double> values);
    void row(const std::vector<std::string>& cells);
    /// Final sentinel line `FAILED <name> t=<t>`.
    void failed(const std::string& error_name, double t);

private:
    std::FILE* f_ = nullptr;
};

/// 17 significant digits.
std::string format_double(double v);

/// `fields_<t>.f64` with t printed to 6 decimals.
std::string fields_filename(double t);

/// 32-byte header `GNFLOW1 n=<n> L=<L> t=<t>` padded with spaces.
std::string fields_header(std::size_t n, double length, double t);

/// Header then each field as n little-endian doubles.
void write_fields(const std::filesystem::path& path, double length, double t,
                  const std::vector<std::span<const double>>& fields);

struct FieldsFile {
    std::string header;
    std::vector<double> values;
};
FieldsFile read_fields(const std::filesystem::path& path);

}  // namespace gnflow
