#include "knn/select.hpp"

#include <exception>
#include <thread>
#include <vector>

#include "knn/errors.hpp"

namespace knn {

StridedRange strided_partition(std::uint32_t line_length, std::uint32_t workers,
                               std::uint32_t worker_id) {
    if (workers < 1) throw ConfigError("workers must be at least 1");
    if (worker_id >= workers) throw ConfigError("worker id out of range");
    return StridedRange(line_length, workers, worker_id);
}

namespace {

// Candidate funnel for one target heap: lock-free filter against the root
// hint, a small private buffer, and a locked flush whose push re-checks each
// candidate against the live root. Hints only lag (the root never grows), so
// the filter may over-admit but the flush never stores a loser.
class LineSink {
public:
    LineSink(HeapStore& store, std::uint32_t target, std::vector<Neighbor>& buf,
             std::uint32_t buf_size, SelectStats& stats)
        : store_(store), target_(target), buf_(buf), buf_size_(buf_size), stats_(stats) {}

    ~LineSink() { flush(); }

    void offer(dist_t dist, std::uint32_t index) {
        ++stats_.offered;
        if (dist <= store_.root_hint(target_)) {
            buf_.push_back({dist, index});
            ++stats_.buffered;
            if (buf_.size() >= buf_size_) flush();
        }
    }

    void flush() {
        if (buf_.empty()) return;
        std::scoped_lock lock(store_.flush_mutex(target_));
        NeighborHeap& h = store_.heap(target_);
        for (const Neighbor& c : buf_) {
            if (h.push(c)) ++stats_.flush_pushes;
        }
        store_.refresh_root_hint(target_);
        buf_.clear();
    }

private:
    HeapStore& store_;
    std::uint32_t target_;
    std::vector<Neighbor>& buf_;
    std::uint32_t buf_size_;
    SelectStats& stats_;
};

SelectStats scan_tile(const DistanceTile& tile, HeapStore& store, std::uint32_t buf_size,
                      std::uint32_t workers, std::uint32_t worker_id) {
    SelectStats stats;
    std::vector<Neighbor> buf;
    buf.reserve(buf_size);

    // Row pass: row r of the tile lists candidates for query y = y_begin + r,
    // indexed by the column vector x.
    const std::uint32_t w = tile.width();
    for (std::uint32_t r = 0; r < tile.height(); ++r) {
        const std::uint32_t cb = tile.col_begin_for_row(r);
        if (cb >= w) continue;
        const dist_t* row = tile.row_data(r);
        LineSink sink(store, tile.y_begin() + r, buf, buf_size, stats);
        for (std::uint32_t i : strided_partition(w - cb, workers, worker_id)) {
            const std::uint32_t c = cb + i;
            sink.offer(row[c], tile.x_begin() + c);
        }
    }

    // Column pass: the same entries mirrored, column c serving query
    // x = x_begin + c with the row vector y as the candidate index.
    for (std::uint32_t c = 0; c < w; ++c) {
        const std::uint32_t rend = tile.row_end_for_col(c);
        if (rend == 0) continue;
        LineSink sink(store, tile.x_begin() + c, buf, buf_size, stats);
        for (std::uint32_t r : strided_partition(rend, workers, worker_id)) {
            sink.offer(tile.value(r, c), tile.y_begin() + r);
        }
    }
    return stats;
}

}  // namespace

SelectStats k_smallest_push(const DistanceTile& tile, HeapStore& store,
                            std::uint32_t buf_size, std::uint32_t workers) {
    if (buf_size < 1) throw ConfigError("buf_size must be at least 1");
    if (workers < 1) throw ConfigError("workers must be at least 1");

    if (workers == 1) {
        return scan_tile(tile, store, buf_size, 1, 0);
    }

    std::vector<SelectStats> stats(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (std::uint32_t wid = 1; wid < workers; ++wid) {
        threads.emplace_back([&, wid] {
            try {
                stats[wid] = scan_tile(tile, store, buf_size, workers, wid);
            } catch (...) {
                errors[wid] = std::current_exception();
            }
        });
    }
    try {
        stats[0] = scan_tile(tile, store, buf_size, workers, 0);
    } catch (...) {
        errors[0] = std::current_exception();
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    SelectStats total;
    for (const SelectStats& s : stats) total += s;
    return total;
}

}  // namespace knn
