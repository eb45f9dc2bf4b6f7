#include <cstring>
#include <fstream>
#include <sstream>

#include "schurtele/schur_weyl.hpp"

namespace schurtele {

namespace {

constexpr char kMagic[8] = {'S', 'C', 'H', 'W', 'B', 'A', 'S', '1'};

template <typename T>
void put(std::ostream& os, const T& value) {
    os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T value{};
    is.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!is) throw std::runtime_error("load_schur_basis: truncated file");
    return value;
}

}  // namespace

void save_schur_basis(const SchurBasis& basis, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("save_schur_basis: cannot open " + path.string());
    os.write(kMagic, sizeof(kMagic));
    put<std::int32_t>(os, basis.version);
    put<std::int32_t>(os, basis.n);
    put<std::int32_t>(os, basis.d);
    put<std::uint64_t>(os, basis.seed);
    put<std::uint64_t>(os, basis.blocks.size());
    for (const auto& b : basis.blocks) {
        for (int part : b.lambda.parts()) put<std::int32_t>(os, part);
        put<std::uint64_t>(os, b.dim_u);
        put<std::uint64_t>(os, b.dim_v);
        for (const auto& word : b.tableaux)
            for (int r : word) put<std::int32_t>(os, r);
        put<std::int64_t>(os, b.vectors.rows());
        put<std::int64_t>(os, b.vectors.cols());
        os.write(reinterpret_cast<const char*>(b.vectors.data()),
                 static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(b.vectors.size())));
    }
    if (!os) throw std::runtime_error("save_schur_basis: write failed for " + path.string());
}

SchurBasis load_schur_basis(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_schur_basis: cannot open " + path.string());
    char magic[sizeof(kMagic)];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("load_schur_basis: not a Schur basis file");

    SchurBasis basis;
    basis.version = get<std::int32_t>(is);
    if (basis.version != kSchurBasisVersion) throw std::runtime_error("load_schur_basis: unsupported version");
    basis.n = get<std::int32_t>(is);
    basis.d = get<std::int32_t>(is);
    basis.seed = get<std::uint64_t>(is);
    const auto count = get<std::uint64_t>(is);
    for (std::uint64_t i = 0; i < count; ++i) {
        SchurBlock b;
        std::vector<int> parts(static_cast<std::size_t>(basis.d));
        for (auto& part : parts) part = get<std::int32_t>(is);
        b.lambda = Partition(parts, basis.d);
        b.dim_u = get<std::uint64_t>(is);
        b.dim_v = get<std::uint64_t>(is);
        b.tableaux.assign(b.dim_v, YamanouchiWord(static_cast<std::size_t>(basis.n)));
        for (auto& word : b.tableaux)
            for (auto& r : word) r = get<std::int32_t>(is);
        const auto rows = get<std::int64_t>(is);
        const auto cols = get<std::int64_t>(is);
        b.vectors.resize(rows, cols);
        is.read(reinterpret_cast<char*>(b.vectors.data()),
                static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(b.vectors.size())));
        if (!is) throw std::runtime_error("load_schur_basis: truncated file");
        basis.blocks.push_back(std::move(b));
    }
    return basis;
}

SchurBasis cached_schur_basis(const std::filesystem::path& dir, int n, int d, std::uint64_t seed) {
    std::ostringstream name;
    name << "basis-n" << n << "-d" << d << "-s" << seed << "-v" << kSchurBasisVersion << ".bin";
    const auto path = dir / name.str();
    if (std::filesystem::exists(path)) return load_schur_basis(path);
    auto basis = build_schur_basis(n, d, seed);
    std::filesystem::create_directories(dir);
    save_schur_basis(basis, path);
    return basis;
}

}  // namespace schurtele
