// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/io.hpp"

#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pheig/error.hpp"

namespace pheig::io {

namespace {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

std::string fmt_pair(const cplx& z) { return fmt17(z.real()) + " " + fmt17(z.imag()); }

double parse_double(const std::string& tok, const char* what) {
    if (tok == "nan" || tok == "inf" || tok == "-inf") throw IoError(std::string(what) + ": non-finite value " + tok);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || errno == ERANGE) throw IoError(std::string(what) + ": bad number '" + tok + "'");
    return v;
}

template <class T>
void put(std::string& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

class Reader {
public:
    explicit Reader(const std::string& s) : s_(s) {}
    template <class T>
    T get() {
        if (pos_ + sizeof(T) > s_.size()) throw IoError("binary file truncated");
        T v;
        std::memcpy(&v, s_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }
    std::string bytes(size_t n) {
        if (pos_ + n > s_.size()) throw IoError("binary file truncated");
        std::string r = s_.substr(pos_, n);
        pos_ += n;
        return r;
    }
    size_t remaining() const { return s_.size() - pos_; }

private:
    const std::string& s_;
    size_t pos_ = 0;
};

void put_matrix(std::string& out, const Matrix& m) {
    for (const auto& z : m.storage()) {
        put(out, z.real());
        put(out, z.imag());
    }
}

Matrix get_matrix(Reader& r, size_t rows, size_t cols) {
    if (rows != 0 && cols > r.remaining() / (16 * rows)) throw IoError("binary file truncated");
    std::vector<cplx> data(rows * cols);
    for (auto& z : data) {
        const double re = r.get<double>();
        const double im = r.get<double>();
        z = cplx(re, im);
    }
    try {
        return Matrix::from_column_major(rows, cols, std::move(data));
    } catch (const ValidationError& e) {
        throw IoError(std::string("binary file: ") + e.what());
    }
}

} // namespace

std::string fmt17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_matrix_market(const Matrix& m, const std::string& comment) {
    std::string out = "%%MatrixMarket matrix array complex general\n";
    if (!comment.empty()) out += "% " + comment + "\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (const auto& z : m.storage()) out += fmt_pair(z) + "\n";
    return out;
}

Matrix parse_matrix_market(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("Matrix Market: empty input");
    std::istringstream hdr(line);
    std::string banner, object, format, field, symmetry;
    hdr >> banner >> object >> format >> field >> symmetry;
    for (auto* s : {&object, &format, &field, &symmetry})
        for (auto& c : *s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (banner != "%%MatrixMarket" || object != "matrix" || format != "array" || field != "complex" ||
        symmetry != "general")
        throw IoError("Matrix Market: expected 'matrix array complex general' header, got '" + line + "'");
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '%') break;
    size_t rows = 0, cols = 0;
    {
        std::istringstream sz(line);
        if (!(sz >> rows >> cols)) throw IoError("Matrix Market: bad size line '" + line + "'");
    }
    std::vector<cplx> data;
    data.reserve(rows * cols);
    std::string re, im;
    while (data.size() < rows * cols && (in >> re >> im))
        data.emplace_back(parse_double(re, "Matrix Market"), parse_double(im, "Matrix Market"));
    if (data.size() != rows * cols)
        throw IoError("Matrix Market: expected " + std::to_string(rows * cols) + " entries, found " +
                      std::to_string(data.size()));
    std::string extra;
    if (in >> extra) throw IoError("Matrix Market: trailing data after the last entry");
    return Matrix::from_column_major(rows, cols, std::move(data));
}

void write_matrix_market(const fs::path& path, const Matrix& m, const std::string& comment) {
    write_file(path, format_matrix_market(m, comment));
}
Matrix read_matrix_market(const fs::path& path) { return parse_matrix_market(read_file(path)); }

std::string encode_pchb(const BseHamiltonian& h) {
    std::string out = "PCHB";
    put<std::uint32_t>(out, kPchbVersion);
    put<std::uint64_t>(out, h.half_dim());
    put_matrix(out, h.A());
    put_matrix(out, h.B());
    return out;
}

BseHamiltonian decode_pchb(const std::string& bytes) {
    Reader r(bytes);
    if (r.bytes(4) != "PCHB") throw IoError("PCHB: bad magic");
    const auto version = r.get<std::uint32_t>();
    if (version != kPchbVersion) throw IoError("PCHB: unsupported version " + std::to_string(version));
    const auto m = r.get<std::uint64_t>();
    if (m == 0) throw IoError("PCHB: zero dimension");
    Matrix a = get_matrix(r, m, m);
    Matrix b = get_matrix(r, m, m);
    if (r.remaining() != 0) throw IoError("PCHB: trailing bytes");
    return BseHamiltonian(std::move(a), std::move(b));
}

void write_pchb(const fs::path& path, const BseHamiltonian& h) { write_file(path, encode_pchb(h)); }
BseHamiltonian read_pchb(const fs::path& path) { return decode_pchb(read_file(path)); }

std::string encode_vectors(const std::vector<double>& values, const Matrix& v) {
    if (values.size() != v.cols()) throw DimensionError("encode_vectors: one value per column expected");
    std::string out = "PCHV";
    put<std::uint32_t>(out, kPchvVersion);
    put<std::uint64_t>(out, v.rows());
    put<std::uint64_t>(out, v.cols());
    for (double x : values) put(out, x);
    put_matrix(out, v);
    return out;
}

void decode_vectors(const std::string& bytes, std::vector<double>& values, Matrix& v) {
    Reader r(bytes);
    if (r.bytes(4) != "PCHV") throw IoError("PCHV: bad magic");
    const auto version = r.get<std::uint32_t>();
    if (version != kPchvVersion) throw IoError("PCHV: unsupported version " + std::to_string(version));
    const auto rows = r.get<std::uint64_t>();
    const auto cols = r.get<std::uint64_t>();
    if (cols > r.remaining() / 8) throw IoError("PCHV: truncated");
    values.resize(cols);
    for (auto& x : values) x = r.get<double>();
    v = get_matrix(r, rows, cols);
    if (r.remaining() != 0) throw IoError("PCHV: trailing bytes");
}

void write_vectors(const fs::path& path, const std::vector<double>& values, const Matrix& v) {
    write_file(path, encode_vectors(values, v));
}

void read_vectors(const fs::path& path, std::vector<double>& values, Matrix& v) {
    decode_vectors(read_file(path), values, v);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return ss.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t hamiltonian_digest(const BseHamiltonian& h) { return fnv1a64(encode_pchb(h)); }

std::string format_eigenvalue_csv(const EigenvalueCsv& csv) {
    std::string out;
    for (const auto& [k, v] : csv.meta) out += "# " + k + ": " + v + "\n";
    out += "index,lambda,residual\n";
    for (size_t i = 0; i < csv.lambdas.size(); ++i) {
        out += std::to_string(i) + "," + fmt17(csv.lambdas[i]) + "," +
               (i < csv.residuals.size() ? fmt17(csv.residuals[i]) : std::string("nan")) + "\n";
    }
    return out;
}

EigenvalueCsv parse_eigenvalue_csv(const std::string& text) {
    EigenvalueCsv csv;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(": ");
            if (colon != std::string::npos) csv.meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        if (!header) {
            if (line != "index,lambda,residual") throw IoError("eigenvalue CSV: unexpected header '" + line + "'");
            header = true;
            continue;
        }
        std::istringstream row(line);
        std::string idx, lam, res;
        if (!std::getline(row, idx, ',') || !std::getline(row, lam, ',') || !std::getline(row, res))
            throw IoError("eigenvalue CSV: bad row '" + line + "'");
        csv.lambdas.push_back(std::strtod(lam.c_str(), nullptr));
        csv.residuals.push_back(std::strtod(res.c_str(), nullptr));
    }
    if (!header) throw IoError("eigenvalue CSV: missing header");
    return csv;
}

std::string format_trace_csv(const std::vector<IterationRecord>& trace,
                             const std::vector<std::pair<std::string, std::string>>& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
    out += "iter,locked,k,max_res,min_res_unlocked,mu_nevex,variant,lambda_min_M,flops\n";
    for (const auto& r : trace) {
        out += std::to_string(r.iter) + "," + std::to_string(r.locked) + "," + std::to_string(r.k) + "," +
               fmt17(r.max_res) + "," + fmt17(r.min_res_unlocked) + "," + fmt17(r.mu_nevex) + "," +
               to_string(r.variant) + "," + fmt17(r.lambda_min_M) + "," + fmt17(r.flops) + "\n";
    }
    return out;
}

} // namespace pheig::io
