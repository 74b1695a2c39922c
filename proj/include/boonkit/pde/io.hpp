#pragma once

// BOONDATA v1 container. Layout, all integers little-endian:
//   bytes 0-7   magic "BOONDATA"
//   u32         version = 1
//   u32         problem tag
//   u32         dims, then dims x u32 grid sizes
//   u32         n_samples, u32 m
//   f64[]       inputs  (n_samples x points, row-major)
//   f64[]       outputs (n_samples x m x points, row-major)
//   u32         metadata length, then that many UTF-8 JSON bytes
// The JSON carries the spec echo, seed, and split indices. Three failure
// classes stay distinct: FormatError (magic/version/tag), TruncatedError
// (file ends early), ShapeError (header inconsistent with payload).

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "boonkit/pde/dataset.hpp"

namespace boon {

struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};
struct TruncatedError : std::runtime_error {
    explicit TruncatedError(const std::string& what) : std::runtime_error(what) {}
};
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

namespace iodetail {

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_f64(std::string& out, double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;
    const char* prefix = "BOONDATA";

    void need(std::size_t bytes, const char* what) const {
        if (pos + bytes > buf.size())
            throw TruncatedError(std::string(prefix) + ": file ends inside " + what);
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    double f64(const char* what) {
        need(8, what);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 8;
        return std::bit_cast<double>(bits);
    }
};

} // namespace iodetail

inline constexpr char kDatasetMagic[8] = {'B', 'O', 'O', 'N', 'D', 'A', 'T', 'A'};

inline std::string encode_dataset(const Dataset& ds) {
    const ProblemSpec& spec = ds.spec;
    const std::size_t pts = spec.grid.points();
    if (ds.inputs.size() != ds.n_samples * pts ||
        ds.outputs.size() != ds.n_samples * spec.m * pts)
        throw ShapeError("encode_dataset: array sizes disagree with the spec");

    std::string out;
    out.reserve(64 + 8 * (ds.inputs.size() + ds.outputs.size()));
    out.append(kDatasetMagic, 8);
    iodetail::put_u32(out, 1);
    iodetail::put_u32(out, static_cast<std::uint32_t>(spec.problem));
    iodetail::put_u32(out, static_cast<std::uint32_t>(spec.grid.dims));
    for (std::size_t d = 0; d < spec.grid.dims; ++d)
        iodetail::put_u32(out, static_cast<std::uint32_t>(spec.grid.n[d]));
    iodetail::put_u32(out, static_cast<std::uint32_t>(ds.n_samples));
    iodetail::put_u32(out, static_cast<std::uint32_t>(spec.m));
    for (double v : ds.inputs)
        iodetail::put_f64(out, v);
    for (double v : ds.outputs)
        iodetail::put_f64(out, v);

    nlohmann::json meta;
    meta["problem"] = problem_name(spec.problem);
    meta["seed"] = spec.seed;
    meta["n_t"] = spec.n_t;
    meta["t_final"] = spec.t_final;
    meta["nu"] = spec.nu;
    meta["k_cond"] = spec.k_cond;
    meta["re"] = spec.re;
    meta["u_mag"] = spec.u_mag;
    meta["c_wave"] = spec.c_wave;
    meta["lo"] = std::vector<double>(spec.grid.lo.begin(), spec.grid.lo.begin() + spec.grid.dims);
    meta["hi"] = std::vector<double>(spec.grid.hi.begin(), spec.grid.hi.begin() + spec.grid.dims);
    meta["train"] = ds.train_idx;
    meta["test"] = ds.test_idx;
    const std::string meta_str = meta.dump();
    iodetail::put_u32(out, static_cast<std::uint32_t>(meta_str.size()));
    out += meta_str;
    return out;
}

inline Dataset decode_dataset(const std::string& buf) {
    iodetail::Reader r{buf};
    r.need(8, "magic");
    if (std::memcmp(buf.data(), kDatasetMagic, 8) != 0)
        throw FormatError("BOONDATA: bad magic");
    r.pos = 8;
    const std::uint32_t version = r.u32("version");
    if (version != 1)
        throw FormatError("BOONDATA: unsupported version " + std::to_string(version));
    const std::uint32_t tag = r.u32("problem tag");
    if (tag < 1 || tag > 6)
        throw FormatError("BOONDATA: unknown problem tag " + std::to_string(tag));

    Dataset ds;
    ds.spec.problem = static_cast<Problem>(tag);
    const std::uint32_t dims = r.u32("dims");
    if (dims != 1 && dims != 2)
        throw ShapeError("BOONDATA: dims must be 1 or 2");
    std::uint32_t sizes[2] = {0, 0};
    for (std::uint32_t d = 0; d < dims; ++d) {
        sizes[d] = r.u32("grid size");
        if (sizes[d] < 4 || sizes[d] > 1u << 20)
            throw ShapeError("BOONDATA: grid size out of range");
    }
    const std::uint32_t n_samples = r.u32("sample count");
    const std::uint32_t m = r.u32("output steps");
    if (n_samples == 0 || m == 0)
        throw ShapeError("BOONDATA: zero samples or output steps");

    const std::size_t pts = (dims == 1) ? sizes[0] : std::size_t(sizes[0]) * sizes[1];
    // Bound the payload by what the file can actually hold before allocating.
    const std::uint64_t in_count = std::uint64_t(n_samples) * pts;
    if (m != 0 && in_count > UINT64_MAX / (8ull * m))
        throw ShapeError("BOONDATA: payload size overflows");
    const std::uint64_t payload_bytes = 8ull * in_count + 8ull * in_count * m;
    if (buf.size() - r.pos < payload_bytes)
        throw TruncatedError("BOONDATA: file ends inside the sample payload");

    ds.n_samples = n_samples;
    ds.inputs.resize(std::size_t(n_samples) * pts);
    ds.outputs.resize(std::size_t(n_samples) * m * pts);
    for (double& v : ds.inputs)
        v = r.f64("inputs");
    for (double& v : ds.outputs)
        v = r.f64("outputs");

    const std::uint32_t meta_len = r.u32("metadata length");
    r.need(meta_len, "metadata");
    const std::string meta_str = buf.substr(r.pos, meta_len);
    r.pos += meta_len;
    if (r.pos != buf.size())
        throw ShapeError("BOONDATA: trailing bytes after metadata");

    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(meta_str);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("BOONDATA: metadata is not valid JSON: ") + e.what());
    }
    try {
        if (problem_from_name(meta.at("problem").get<std::string>()) != ds.spec.problem)
            throw ShapeError("BOONDATA: metadata problem disagrees with header tag");
        ds.spec.seed = meta.at("seed").get<std::uint64_t>();
        ds.spec.n_t = meta.at("n_t").get<std::size_t>();
        ds.spec.m = m;
        ds.spec.t_final = meta.at("t_final").get<double>();
        ds.spec.nu = meta.at("nu").get<double>();
        ds.spec.k_cond = meta.at("k_cond").get<double>();
        ds.spec.re = meta.at("re").get<double>();
        ds.spec.u_mag = meta.at("u_mag").get<double>();
        ds.spec.c_wave = meta.at("c_wave").get<double>();
        auto lo = meta.at("lo").get<std::vector<double>>();
        auto hi = meta.at("hi").get<std::vector<double>>();
        if (lo.size() != dims || hi.size() != dims)
            throw ShapeError("BOONDATA: metadata extents disagree with header dims");
        if (dims == 2 && (lo[1] != lo[0] || hi[1] != hi[0]))
            throw ShapeError("BOONDATA: 2D grids must share extents across axes");
        try {
            ds.spec.grid = (dims == 1) ? Grid::line(sizes[0], lo[0], hi[0])
                                       : Grid::square(sizes[0], sizes[1], lo[0], hi[0]);
        } catch (const std::invalid_argument& e) {
            throw ShapeError(std::string("BOONDATA: bad grid extents: ") + e.what());
        }
        ds.train_idx = meta.at("train").get<std::vector<std::uint32_t>>();
        ds.test_idx = meta.at("test").get<std::vector<std::uint32_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("BOONDATA: metadata missing fields: ") + e.what());
    }
    for (std::uint32_t idx : ds.train_idx)
        if (idx >= n_samples)
            throw ShapeError("BOONDATA: train index out of range");
    for (std::uint32_t idx : ds.test_idx)
        if (idx >= n_samples)
            throw ShapeError("BOONDATA: test index out of range");
    if (ds.spec.m > ds.spec.n_t)
        throw ShapeError("BOONDATA: m exceeds n_t");
    return ds;
}

inline void write_dataset(const Dataset& ds, const std::string& path) {
    const std::string bytes = encode_dataset(ds);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("write_dataset: cannot open " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("write_dataset: short write to " + path);
}

inline Dataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_dataset: cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_dataset(bytes);
}

} // namespace boon
