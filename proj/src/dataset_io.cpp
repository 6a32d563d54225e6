#include "dimerquench/dataset_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "dimerquench/table_io.hpp"

namespace dimerquench {

namespace {

constexpr char magic[4] = {'D', 'Q', 'M', 'D'};

class Writer {
public:
    void bytes(const void *data, std::size_t size) {
        const auto *p = static_cast<const std::uint8_t *>(data);
        out_.insert(out_.end(), p, p + size);
    }
    template <typename T> void le(T value) {
        std::uint8_t buf[sizeof(T)];
        std::memcpy(buf, &value, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) {
            std::reverse(std::begin(buf), std::end(buf));
        }
        bytes(buf, sizeof(T));
    }
    void u8(std::uint8_t v) { out_.push_back(v); }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t> &in) : in_(in) {}

    const std::uint8_t *take(std::size_t size) {
        if (in_.size() - pos_ < size) {
            throw std::invalid_argument("dataset buffer is truncated");
        }
        const auto *p = in_.data() + pos_;
        pos_ += size;
        return p;
    }
    template <typename T> T le() {
        std::uint8_t buf[sizeof(T)];
        std::memcpy(buf, take(sizeof(T)), sizeof(T));
        if constexpr (std::endian::native == std::endian::big) {
            std::reverse(std::begin(buf), std::end(buf));
        }
        T v;
        std::memcpy(&v, buf, sizeof(T));
        return v;
    }
    std::uint8_t u8() { return *take(1); }
    [[nodiscard]] bool done() const noexcept { return pos_ == in_.size(); }

private:
    const std::vector<std::uint8_t> &in_;
    std::size_t pos_ = 0;
};

std::size_t shot_bytes(int num_qubits) { return (static_cast<std::size_t>(num_qubits) + 7) / 8; }

} // namespace

std::vector<std::uint8_t> encode_dataset(const MeasurementDataset &dataset) {
    dataset.validate();
    Writer w;
    w.bytes(magic, sizeof(magic));
    w.le<std::uint32_t>(dataset_format_version);
    w.le<std::uint32_t>(static_cast<std::uint32_t>(dataset.num_qubits));
    w.le<std::uint32_t>(static_cast<std::uint32_t>(dataset.num_unitaries()));
    w.le<std::uint32_t>(static_cast<std::uint32_t>(dataset.shots_per_unitary));
    w.le<std::uint64_t>(dataset.seed);
    w.le<double>(dataset.t);
    w.u8(dataset.params ? 1 : 0);
    if (dataset.params) {
        w.le<std::int32_t>(dataset.params->n);
        w.le<double>(dataset.params->J);
        w.le<double>(dataset.params->delta);
        w.u8(static_cast<std::uint8_t>(dataset.params->boundary));
    }
    for (const auto &u : dataset.unitaries) {
        for (const auto b : u) {
            w.u8(static_cast<std::uint8_t>(b));
        }
    }
    const std::size_t nb = shot_bytes(dataset.num_qubits);
    for (const auto outcome : dataset.outcomes) {
        for (std::size_t k = 0; k < nb; ++k) {
            w.u8(static_cast<std::uint8_t>(outcome >> (8 * k)));
        }
    }
    return w.take();
}

MeasurementDataset decode_dataset(const std::vector<std::uint8_t> &bytes) {
    Reader r(bytes);
    if (std::memcmp(r.take(sizeof(magic)), magic, sizeof(magic)) != 0) {
        throw std::invalid_argument("not a measurement dataset (bad magic)");
    }
    const auto version = r.le<std::uint32_t>();
    if (version != dataset_format_version) {
        throw std::invalid_argument("unsupported dataset version " + std::to_string(version));
    }
    MeasurementDataset d;
    const auto nq = r.le<std::uint32_t>();
    const auto nu = r.le<std::uint32_t>();
    const auto nm = r.le<std::uint32_t>();
    if (nq == 0 || nq > 64) {
        throw std::invalid_argument("dataset qubit count out of range");
    }
    d.num_qubits = static_cast<int>(nq);
    d.shots_per_unitary = static_cast<int>(nm);
    d.seed = r.le<std::uint64_t>();
    d.t = r.le<double>();
    const auto has_params = r.u8();
    if (has_params > 1) {
        throw std::invalid_argument("bad params flag in dataset");
    }
    if (has_params == 1) {
        ModelParams p;
        p.n = r.le<std::int32_t>();
        p.J = r.le<double>();
        p.delta = r.le<double>();
        const auto b = r.u8();
        if (b > 1) {
            throw std::invalid_argument("bad boundary code in dataset");
        }
        p.boundary = static_cast<Boundary>(b);
        d.params = p;
    }
    const std::size_t nb = shot_bytes(d.num_qubits);
    // Check the remaining size before allocating anything large.
    const std::size_t expected = static_cast<std::size_t>(nu) * nq + static_cast<std::size_t>(nu) * nm * nb;
    const std::uint8_t *body = r.take(expected);
    d.unitaries.resize(nu);
    for (std::uint32_t u = 0; u < nu; ++u) {
        d.unitaries[u].resize(nq);
        for (std::uint32_t q = 0; q < nq; ++q) {
            const auto b = *body++;
            if (b > 2) {
                throw std::invalid_argument("bad basis code in dataset");
            }
            d.unitaries[u][q] = static_cast<PauliBasis>(b);
        }
    }
    d.outcomes.resize(static_cast<std::size_t>(nu) * nm);
    for (auto &o : d.outcomes) {
        std::uint64_t v = 0;
        for (std::size_t k = 0; k < nb; ++k) {
            v |= static_cast<std::uint64_t>(*body++) << (8 * k);
        }
        o = v;
    }
    if (!r.done()) {
        throw std::invalid_argument("trailing bytes after dataset");
    }
    d.validate();
    return d;
}

void write_dataset(const std::filesystem::path &path, const MeasurementDataset &dataset) {
    const auto bytes = encode_dataset(dataset);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

MeasurementDataset read_dataset(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_dataset(bytes);
}

nlohmann::json dataset_sidecar(const MeasurementDataset &dataset) {
    nlohmann::json j = {{"format", "DQMD"},
                        {"format_version", dataset_format_version},
                        {"num_qubits", dataset.num_qubits},
                        {"num_unitaries", dataset.num_unitaries()},
                        {"shots_per_unitary", dataset.shots_per_unitary},
                        {"seed", dataset.seed},
                        {"t", dataset.t}};
    if (dataset.params) {
        j["params"] = params_metadata(*dataset.params);
    }
    return j;
}

} // namespace dimerquench
