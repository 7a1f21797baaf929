#include "gnflow/output.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <cstring>
#include <fstream>

namespace gnflow {

OutputLock::OutputLock(const std::filesystem::path& dir) : lock_(dir / ".lock")
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
    const int fd = ::open(lock_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        if (errno == EEXIST)
            throw OutputLocked("output directory '" + dir.string()
                               + "' is in use (remove .lock if no run is active)");
        throw Error("cannot create lock in '" + dir.string() + "': " + std::strerror(errno));
    }
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] const auto w = ::write(fd, pid.data(), pid.size());
    ::close(fd);
}

OutputLock::~OutputLock()
{
    std::error_code ec;
    std::filesystem::remove(lock_, ec);
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
{
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_)
        throw Error("cannot open '" + path.string() + "' for writing");
    row(columns);
}

CsvWriter::~CsvWriter()
{
    if (f_)
        std::fclose(f_);
}

void CsvWriter::row(std::span<const double> values)
{
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values)
        cells.push_back(format_double(v));
    row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            std::fputc(',', f_);
        std::fputs(cells[i].c_str(), f_);
    }
    std::fputc('\n', f_);
    std::fflush(f_);
}

void CsvWriter::failed(const std::string& error_name, double t)
{
    std::fprintf(f_, "FAILED %s t=%.17g\n", error_name.c_str(), t);
    std::fflush(f_);
}

std::string fields_filename(double t)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "fields_%.6f.f64", t);
    return buf;
}

std::string fields_header(std::size_t n, double length, double t)
{
    char buf[96];
    for (int prec = 17; prec >= 1; --prec) {
        const int len = std::snprintf(buf, sizeof buf, "GNFLOW1 n=%zu L=%.*g t=%.*g", n, prec,
                                      length, prec, t);
        if (len <= 32) {
            std::string h(buf, static_cast<std::size_t>(len));
            h.resize(32, ' ');
            return h;
        }
    }
    throw Error("fields header does not fit in 32 bytes");
}

void write_fields(const std::filesystem::path& path, double length, double t,
                  const std::vector<std::span<const double>>& fields)
{
    const std::size_t n = fields.empty() ? 0 : fields.front().size();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open '" + path.string() + "' for writing");
    const std::string header = fields_header(n, length, t);
    out.write(header.data(), 32);
    for (const auto& f : fields) {
        if (f.size() != n)
            throw Error("fields of unequal length");
        for (double v : f) {
            std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
            if constexpr (std::endian::native == std::endian::big)
                bits = __builtin_bswap64(bits);
            out.write(reinterpret_cast<const char*>(&bits), 8);
        }
    }
    if (!out)
        throw Error("short write to '" + path.string() + "'");
}

FieldsFile read_fields(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");
    FieldsFile f;
    f.header.resize(32);
    in.read(f.header.data(), 32);
    if (in.gcount() != 32 || f.header.rfind("GNFLOW1 ", 0) != 0)
        throw Error("'" + path.string() + "' is not a fields file");
    std::uint64_t bits;
    while (in.read(reinterpret_cast<char*>(&bits), 8)) {
        if constexpr (std::endian::native == std::endian::big)
            bits = __builtin_bswap64(bits);
        f.values.push_back(std::bit_cast<double>(bits));
    }
    return f;
}

}  // namespace gnflow
