#include "anse/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace anse::fft {

namespace {

struct PlanCache {
    std::mutex mutex;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;

    ~PlanCache()
    {
        for (auto& [key, plan] : plans) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(int n_h, int n_v, Direction dir)
    {
        const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
        const auto key = std::make_tuple(n_h, n_v, sign);
        std::lock_guard lock(mutex);
        if (auto it = plans.find(key); it != plans.end()) {
            return it->second;
        }
        // ESTIMATE keeps the chosen algorithm (and therefore every bit of the
        // output) independent of timing measurements.
        const std::size_t n = static_cast<std::size_t>(n_h) * n_h * n_v;
        std::vector<std::complex<double>> scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_3d(n_h, n_h, n_v, buf, buf, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) {
            throw std::runtime_error("fftw: plan creation failed");
        }
        plans.emplace(key, plan);
        return plan;
    }
};

PlanCache& cache()
{
    static PlanCache instance;
    return instance;
}

} // namespace

void transform(std::span<std::complex<double>> data, const Grid& grid, Direction dir)
{
    if (data.size() != grid.size()) {
        throw std::invalid_argument("fft::transform: buffer size does not match grid");
    }
    fftw_plan plan = cache().get(grid.n_h(), grid.n_v(), dir);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
    if (dir == Direction::forward) {
        const double scale = 1.0 / static_cast<double>(grid.size());
        for (auto& c : data) {
            c *= scale;
        }
    }
}

} // namespace anse::fft
