// Times each parallel kernel against its serial reference and checks that
// both produce identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "c2k/detect.h"
#include "c2k/experiment.h"
#include "c2k/generators.h"
#include "c2k/oracle.h"
#include "c2k/parallel.h"

namespace {

using namespace c2k;

double seconds(const std::function<void()> &f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char *name, double serial, double parallel, bool same) {
    std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("OpenMP %s, %d threads\n", openmp_enabled() ? "enabled" : "disabled", max_threads());
    int mismatches = 0;

    {
        Graph g = projective_plane_incidence(11);
        ParamOverrides ov;
        ov.K = 1000;
        DetectionParams params = DetectionParams::make(Variant::even, g.node_count(), 2, 1.0 / 3.0, ov);
        DetectionStats a;
        DetectionStats b;
        DetectOptions serial;
        DetectOptions parallel;
        parallel.exec = Exec::parallel;
        double ts = seconds([&] { a = detect_even(g, params, 1, serial); });
        double tp = seconds([&] { b = detect_even(g, params, 1, parallel); });
        bool same = a.to_json() == b.to_json();
        mismatches += same ? 0 : 1;
        report("simulator (PG(2,11))", ts, tp, same);
    }

    {
        Graph g = subdivide(projective_plane_incidence(11), 3);
        std::optional<std::size_t> a;
        std::optional<std::size_t> b;
        double ts = seconds([&] { a = girth(g, Exec::serial, g.node_count()); });
        double tp = seconds([&] { b = girth(g, Exec::parallel, g.node_count()); });
        bool same = a == b;
        mismatches += same ? 0 : 1;
        const std::string name = "girth (n=" + std::to_string(g.node_count()) + ")";
        report(name.c_str(), ts, tp, same);
    }

    {
        ExperimentConfig config;
        config.generator = "tree:64";
        config.trials = 200;
        config.seed = 5;
        ExperimentReport a;
        ExperimentReport b;
        double ts = seconds([&] { a = run_experiment(config); });
        config.exec = Exec::parallel;
        double tp = seconds([&] { b = run_experiment(config); });
        nlohmann::json ja = a.to_json();
        nlohmann::json jb = b.to_json();
        ja.erase("config");
        jb.erase("config");
        bool same = ja == jb;
        mismatches += same ? 0 : 1;
        report("trials (tree:64 x200)", ts, tp, same);
    }
    return mismatches == 0 ? 0 : 1;
}
