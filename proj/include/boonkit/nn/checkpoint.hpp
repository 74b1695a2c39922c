#pragma once

// BOONMODL v1 checkpoint. Layout, integers little-endian:
//   bytes 0-7  magic "BOONMODL"
//   u32        version = 1
//   u32        layer count (4), modes, channels, out channels, raw channels (2)
//   u32        bc kind, side, stencil order
//   f64        periodic alpha, beta
//   u32        correction, mollifier
//   u32        parameter count, then f64 parameters
//   u32        optimizer flag; when set: f64 first/second moments (count each),
//              u32 step lo/hi, f64 beta1, beta2, eps
// Error classes match the dataset container: FormatError, TruncatedError,
// ShapeError.

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include "boonkit/nn/adam.hpp"
#include "boonkit/nn/operator.hpp"
#include "boonkit/pde/io.hpp"

namespace boon {

inline constexpr char kModelMagic[8] = {'B', 'O', 'O', 'N', 'M', 'O', 'D', 'L'};

struct Checkpoint {
    OperatorParams params;
    AdamState adam;
    bool has_adam = false;
};

inline std::string encode_checkpoint(const OperatorParams& params, const AdamState* adam = nullptr) {
    params.validate();
    if (adam && (adam->m.size() != params.theta.size() || adam->v.size() != params.theta.size()))
        throw ShapeError("encode_checkpoint: optimizer state size disagrees with the parameters");

    std::string out;
    out.reserve(64 + 8 * params.theta.size() * (adam ? 3 : 1));
    out.append(kModelMagic, 8);
    iodetail::put_u32(out, 1);
    iodetail::put_u32(out, static_cast<std::uint32_t>(OperatorShape::n_layers));
    iodetail::put_u32(out, static_cast<std::uint32_t>(params.shape.modes));
    iodetail::put_u32(out, static_cast<std::uint32_t>(params.shape.channels));
    iodetail::put_u32(out, static_cast<std::uint32_t>(params.shape.out_channels));
    iodetail::put_u32(out, static_cast<std::uint32_t>(OperatorShape::raw_channels));
    iodetail::put_u32(out, static_cast<std::uint32_t>(params.bc.kind));
    iodetail::put_u32(out, static_cast<std::uint32_t>(params.bc.side));
    iodetail::put_u32(out, static_cast<std::uint32_t>(params.bc.stencil_order));
    iodetail::put_f64(out, params.bc.weights.alpha);
    iodetail::put_f64(out, params.bc.weights.beta);
    iodetail::put_u32(out, params.correction ? 1 : 0);
    iodetail::put_u32(out, params.mollifier ? 1 : 0);
    iodetail::put_u32(out, static_cast<std::uint32_t>(params.theta.size()));
    for (double x : params.theta)
        iodetail::put_f64(out, x);
    iodetail::put_u32(out, adam ? 1 : 0);
    if (adam) {
        for (double x : adam->m)
            iodetail::put_f64(out, x);
        for (double x : adam->v)
            iodetail::put_f64(out, x);
        iodetail::put_u32(out, static_cast<std::uint32_t>(adam->t & 0xffffffffu));
        iodetail::put_u32(out, static_cast<std::uint32_t>(adam->t >> 32));
        iodetail::put_f64(out, adam->beta1);
        iodetail::put_f64(out, adam->beta2);
        iodetail::put_f64(out, adam->eps);
    }
    return out;
}

inline Checkpoint decode_checkpoint(const std::string& buf) {
    iodetail::Reader r{buf, 0, "BOONMODL"};
    r.need(8, "the magic");
    if (buf.compare(0, 8, kModelMagic, 8) != 0)
        throw FormatError("BOONMODL: bad magic");
    r.pos = 8;
    const std::uint32_t version = r.u32("the version");
    if (version != 1)
        throw FormatError("BOONMODL: unsupported version " + std::to_string(version));

    Checkpoint ck;
    const std::uint32_t layers = r.u32("the layer count");
    ck.params.shape.modes = r.u32("the mode count");
    ck.params.shape.channels = r.u32("the channel count");
    ck.params.shape.out_channels = r.u32("the output channel count");
    const std::uint32_t raw = r.u32("the raw channel count");
    if (layers != OperatorShape::n_layers || raw != OperatorShape::raw_channels)
        throw ShapeError("BOONMODL: architecture header disagrees with this build");

    const std::uint32_t kind = r.u32("the boundary kind");
    const std::uint32_t side = r.u32("the boundary side");
    if (kind > 2 || side > 2)
        throw FormatError("BOONMODL: unknown boundary tag");
    ck.params.bc.kind = static_cast<BcKind>(kind);
    ck.params.bc.side = static_cast<Side>(side);
    ck.params.bc.stencil_order = static_cast<int>(r.u32("the stencil order"));
    ck.params.bc.weights.alpha = r.f64("the periodic weights");
    ck.params.bc.weights.beta = r.f64("the periodic weights");
    ck.params.correction = r.u32("the correction flag") != 0;
    ck.params.mollifier = r.u32("the mollifier flag") != 0;

    const std::uint32_t count = r.u32("the parameter count");
    ck.params.shape.validate();
    if (count != ck.params.shape.total())
        throw ShapeError("BOONMODL: parameter count disagrees with the architecture header");
    r.need(8 * static_cast<std::size_t>(count), "the parameter block");
    ck.params.theta.resize(count);
    for (std::uint32_t i = 0; i < count; ++i)
        ck.params.theta[i] = r.f64("the parameter block");

    ck.has_adam = r.u32("the optimizer flag") != 0;
    if (ck.has_adam) {
        r.need(16 * static_cast<std::size_t>(count), "the optimizer moments");
        ck.adam.m.resize(count);
        ck.adam.v.resize(count);
        for (std::uint32_t i = 0; i < count; ++i)
            ck.adam.m[i] = r.f64("the optimizer moments");
        for (std::uint32_t i = 0; i < count; ++i)
            ck.adam.v[i] = r.f64("the optimizer moments");
        const std::uint64_t lo = r.u32("the optimizer step");
        const std::uint64_t hi = r.u32("the optimizer step");
        ck.adam.t = lo | (hi << 32);
        ck.adam.beta1 = r.f64("the optimizer settings");
        ck.adam.beta2 = r.f64("the optimizer settings");
        ck.adam.eps = r.f64("the optimizer settings");
    }
    if (r.pos != buf.size())
        throw ShapeError("BOONMODL: trailing bytes after the checkpoint");
    ck.params.validate();
    return ck;
}

inline void write_checkpoint(const std::string& path, const OperatorParams& params,
                             const AdamState* adam = nullptr) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("write_checkpoint: cannot open " + path);
    const std::string bytes = encode_checkpoint(params, adam);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f)
        throw std::runtime_error("write_checkpoint: short write to " + path);
}

inline Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("read_checkpoint: cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return decode_checkpoint(bytes);
}

} // namespace boon
