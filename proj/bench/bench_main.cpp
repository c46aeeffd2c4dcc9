// stabbench: times the OpenMP kernels against their serial reference
// implementations and checks that both produce identical results.

#include "stab/chamber.hpp"
#include "stab/cone.hpp"
#include "stab/quiver.hpp"
#include "stab/rng.hpp"

#include <chrono>
#include <cstdio>

using namespace stab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool equal) {
    std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   results %s\n", name,
                serial, parallel, parallel > 0 ? serial / parallel : 0.0,
                equal ? "equal" : "DIFFER");
}

void bench_quiver_scan() {
    const GF& F = GF::get(2);
    Rng rng(0xbe9c1);
    quiver::QuiverSpec spec{2, {{1, 1}, {1, 1}}};
    quiver::DimVector dims = {4, 2, 4, 2};
    quiver::Rep<Fq> rep;
    rep.spec = spec;
    rep.dims = dims;
    rep.ex = Fq{0, &F};
    rep.maps.assign(2, std::vector<std::vector<Mat<Fq>>>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Mat<Fq> m(static_cast<size_t>(quiver::wdim(dims, j)),
                      static_cast<size_t>(quiver::vdim(dims, i)), rep.ex);
            for (size_t r = 0; r < m.rows(); ++r)
                for (size_t c = 0; c < m.cols(); ++c)
                    m.at(r, c) = Fq{static_cast<uint8_t>(rng.below(2)), &F};
            rep.maps[static_cast<size_t>(i)][static_cast<size_t>(j)].push_back(std::move(m));
        }
    sheaf::StabilityParameter sigma{{Scalar(1), Scalar(2)}};
    std::vector<Scalar> theta = quiver::theta_vector(sigma, dims);
    std::printf("quiver scan: %llu V-subspace tuples over F2\n",
                static_cast<unsigned long long>(quiver::count_vtuples(rep)));

    auto t0 = std::chrono::steady_clock::now();
    quiver::VScanResult ser = quiver::scan_vtuples(rep, theta, 10000000, ExecMode::Serial);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    quiver::VScanResult par = quiver::scan_vtuples(rep, theta, 10000000, ExecMode::Parallel);
    double tp = seconds_since(t0);
    bool equal = ser.found_positive == par.found_positive &&
                 ser.first_positive == par.first_positive && ser.zero_indices == par.zero_indices;
    report("exhaustive V-tuple scan", ts, tp, equal);
}

void bench_chambers() {
    Rng rng(0xbe9c2);
    const size_t j0 = 4;
    std::vector<chamber::Wall> walls;
    while (walls.size() < 10) {
        std::vector<Scalar> form(j0);
        for (auto& x : form) x = Scalar(Rational(rng.range(-4, 4)));
        auto normal = chamber::canonical_normal(form);
        if (normal.empty()) continue;
        bool pos = true, neg = true;
        for (const auto& v : normal) {
            pos = pos && v.sign() > 0;
            neg = neg && v.sign() < 0;
        }
        if (pos || neg) continue;
        chamber::Wall w{normal, 1, "F" + std::to_string(walls.size()), "E"};
        bool dup = false;
        for (const auto& other : walls) dup = dup || other.key() == w.key();
        if (!dup) walls.push_back(std::move(w));
    }
    std::printf("chamber enumeration: %zu walls in %zu weights\n", walls.size(), j0);
    auto t0 = std::chrono::steady_clock::now();
    auto ser = chamber::enumerate_chambers(walls, j0, chamber::Region::FullOrthant, ExecMode::Serial);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto par =
        chamber::enumerate_chambers(walls, j0, chamber::Region::FullOrthant, ExecMode::Parallel);
    double tp = seconds_since(t0);
    bool equal = ser.size() == par.size();
    for (size_t i = 0; equal && i < ser.size(); ++i) equal = ser[i].signs == par[i].signs;
    std::printf("  %zu chambers\n", ser.size());
    report("sign-vector feasibility", ts, tp, equal);
}

void bench_cone_paths() {
    const auto& bt = cone::bundled_tensor("P1xP1xP1");
    cone::DivisorClass l1{{Scalar(1), Scalar(1), Scalar(1)}};
    cone::DivisorClass l2{{Scalar(1), Scalar(3), Scalar(2)}};
    auto push = [&](const cone::DivisorClass& beta, const cone::DivisorClass& l) {
        cone::CurveClass out;
        for (int i = 0; i < 3; ++i) {
            cone::DivisorClass ei{{Scalar(i == 0), Scalar(i == 1), Scalar(i == 2)}};
            out.pair.push_back(cone::eval(bt.tensor, {ei, beta, l}));
        }
        return out;
    };
    cone::CurveClass ginf = push(l1, l1), g0 = push(l2, l2);
    std::printf("cone path certificates: 801-point t-grid\n");
    auto t0 = std::chrono::steady_clock::now();
    auto ser = cone::cplus_path_certificate(bt.tensor, g0, ginf, l1, l2, 801, 12, ExecMode::Serial);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto par =
        cone::cplus_path_certificate(bt.tensor, g0, ginf, l1, l2, 801, 12, ExecMode::Parallel);
    double tp = seconds_since(t0);
    bool equal = ser.all_ok == par.all_ok && ser.certificates.size() == par.certificates.size();
    for (size_t i = 0; equal && i < ser.certificates.size(); ++i)
        equal = ser.certificates[i].ok == par.certificates[i].ok &&
                ser.certificates[i].s == par.certificates[i].s;
    report("C+ path certificates", ts, tp, equal);
}

} // namespace

int main() {
    std::printf("workers: %d (OpenMP %s)\n\n", worker_count(), openmp_enabled() ? "on" : "off");
    bench_quiver_scan();
    bench_chambers();
    bench_cone_paths();
    return 0;
}
