#include <feec/parallel.hpp>

#include <cstdlib>
#include <thread>
#include <vector>

namespace feec {

namespace {
std::atomic<int> configured_threads{0};
}

int thread_count()
{
    int n = configured_threads.load();
    if (n > 0) return n;
    if (const char* env = std::getenv("FEEC_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n)
{
    configured_threads.store(n > 0 ? n : 0);
}

void parallel_for(int n, const std::function<void(int)>& fn)
{
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

std::atomic<long>& global_solve_count()
{
    static std::atomic<long> count{0};
    return count;
}

} // namespace feec
