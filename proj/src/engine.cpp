#include "knn/engine.hpp"

#include <chrono>
#include <exception>
#include <thread>

#include "knn/dist_kernel.hpp"
#include "knn/errors.hpp"
#include "knn/merge.hpp"

namespace knn {

EngineResult solve_knn(const Dataset& ds, const CumulativeDistance& f,
                       const EngineOptions& opt) {
    if (opt.k < 1) throw ConfigError("k must be at least 1");
    if (opt.buf_size < 1) throw ConfigError("buf_size must be at least 1");
    if (opt.workers < 1) throw ConfigError("workers must be at least 1");

    const std::uint32_t gsize =
        opt.gsize != 0 ? opt.gsize : auto_gsize(ds.size(), opt.bsize);
    const GridPlan plan =
        make_plan(ds.size(), gsize, opt.bsize, opt.c1, opt.c2, opt.n_lanes);
    validate_dataset(f, ds);

    const auto t0 = std::chrono::steady_clock::now();

    std::vector<HeapStore> stores;
    stores.reserve(plan.n_lanes);
    for (std::uint32_t lane = 0; lane < plan.n_lanes; ++lane) {
        stores.emplace_back(ds.size(), opt.k);
    }

    std::vector<std::uint64_t> lane_pairs(plan.n_lanes, 0);
    std::vector<SelectStats> lane_stats(plan.n_lanes);
    std::vector<std::exception_ptr> lane_errors(plan.n_lanes);

    std::vector<std::thread> lanes;
    lanes.reserve(plan.n_lanes);
    for (std::uint32_t lane = 0; lane < plan.n_lanes; ++lane) {
        lanes.emplace_back([&, lane] {
            try {
                DistanceTile tile;
                for (const WorkItem& item : work_items_for_lane(plan, lane)) {
                    calc_distances(ds, f, item, plan, lane_pairs[lane], tile);
                    lane_stats[lane] +=
                        k_smallest_push(tile, stores[lane], opt.buf_size, opt.workers);
                }
            } catch (...) {
                lane_errors[lane] = std::current_exception();
            }
        });
    }
    for (std::thread& t : lanes) t.join();
    for (const std::exception_ptr& e : lane_errors) {
        if (e) std::rethrow_exception(e);
    }

    EngineResult result;
    result.lists = merge_all(stores, opt.k);
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.plan = plan;
    for (std::uint32_t lane = 0; lane < plan.n_lanes; ++lane) {
        result.pair_evaluations += lane_pairs[lane];
        result.select_stats += lane_stats[lane];
    }
    return result;
}

}  // namespace knn
