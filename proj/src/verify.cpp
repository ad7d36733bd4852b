#include "linent/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "linent/bloch.hpp"
#include "linent/errors.hpp"
#include "linent/extremal.hpp"

namespace linent {

namespace {

// Slot order matches the records produced by evaluate_all; slot 8 is the
// tripartite bound.
constexpr std::array<const char*, 9> kBoundNames = {
    "subadditivity", "araki_lieb", "audenaert", "appel",
    "isa",           "dssa",       "sharp",     "inverted", "sisa"};

constexpr int kBranchLabels = 6;
constexpr std::array<const char*, kBranchLabels> kBranchStrings = {
    "", "dssa", "isa", "omega", "closed-form", "bisection"};

std::int8_t branch_code(const std::string& name) {
    for (int i = 1; i < kBranchLabels; ++i) {
        if (name == kBranchStrings[i]) return static_cast<std::int8_t>(i);
    }
    return 0;
}

struct LeanBound {
    double value = 0.0;
    double slack = 0.0;
    bool applicable = false;
    std::int8_t branch = 0;
};

struct LeanOutcome {
    double x = 0.0, y = 0.0, z = 0.0;
    std::array<LeanBound, 8> bounds{};
    double sisa_value = 0.0, sisa_slack = 0.0;
    bool has_sisa = false;
    bool witness = false;
    double min_slack = std::numeric_limits<double>::infinity();
    std::int8_t worst = -1;
};

DensityMatrix draw_sample(const SamplerConfig& cfg, std::size_t index) {
    const std::size_t inject = cfg.inject_extremal && cfg.dims.size() == 2
                                   ? std::min<std::size_t>(cfg.count, 64)
                                   : 0;
    if (index < inject) {
        // Deterministic saturating states: seam points, curved-branch interior
        // points, and plane-branch interior points (seam states pulled toward
        // the maximally mixed state stay on the plane).
        const DimPair dims{cfg.dims[0], cfg.dims[1]};
        const double t = static_cast<double>(index + 1) /
                         static_cast<double>(inject + 1);
        switch (index % 3) {
            case 0: return isa_family(t, dims);
            case 1: return dssa_family(0.5 * t, 0.5 * t, dims);
            default:
                return mix_with_maximally_mixed(isa_family(t, dims), 0.5);
        }
    }
    SampleRng rng(cfg.seed, index);
    switch (cfg.ensemble) {
        case Ensemble::pure: return sample_pure_state(cfg.dims, rng);
        case Ensemble::rank_k:
            return sample_rank_k_state(cfg.dims, cfg.rank, rng);
        case Ensemble::hs: default: return sample_hs_state(cfg.dims, rng);
    }
}

void fill_outcome(const SamplerConfig& cfg, const DensityMatrix& state,
                  LeanOutcome& out) {
    BoundReport report;
    if (cfg.dims.size() == 2) {
        report = evaluate_all(state);
    } else {
        const std::vector<int> split{cfg.dims[0], cfg.dims[1] * cfg.dims[2]};
        report = evaluate_all(DensityMatrix::unchecked(state.matrix(), split));
        const SisaReport sisa = evaluate_sisa(state);
        out.has_sisa = true;
        out.sisa_value = sisa.bound;
        out.sisa_slack = sisa.slack;
        out.witness = sisa.witness;
    }
    out.x = report.point.x;
    out.y = report.point.y;
    out.z = report.point.z;
    out.witness = out.witness || report.witness;
    for (std::size_t k = 0; k < out.bounds.size() && k < report.bounds.size();
         ++k) {
        const BoundRecord& r = report.bounds[k];
        LeanBound& b = out.bounds[k];
        b.value = r.value;
        b.slack = r.slack;
        b.applicable = r.applicable;
        b.branch = branch_code(r.branch);
        if (b.applicable && b.slack < out.min_slack) {
            out.min_slack = b.slack;
            out.worst = static_cast<std::int8_t>(k);
        }
    }
    if (out.has_sisa && out.sisa_slack < out.min_slack) {
        out.min_slack = out.sisa_slack;
        out.worst = 8;
    }
}

std::string short_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct StatsAccum {
    std::size_t applicable = 0;
    std::size_t violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
    std::vector<double> slacks;
    std::array<double, kBranchLabels> branch_min;

    StatsAccum() { branch_min.fill(std::numeric_limits<double>::infinity()); }

    void add(std::size_t index, double slack, std::int8_t branch) {
        ++applicable;
        if (slack < kViolationSlack) ++violations;
        if (slack < min_slack) {
            min_slack = slack;
            argmin = index;
        }
        slacks.push_back(slack);
        if (branch > 0 && branch < kBranchLabels &&
            slack < branch_min[branch]) {
            branch_min[branch] = slack;
        }
    }

    BoundStats finish() {
        BoundStats s;
        s.applicable_count = applicable;
        s.violations = violations;
        if (applicable > 0) {
            s.min_slack = min_slack;
            s.argmin_index = argmin;
            std::sort(slacks.begin(), slacks.end());
            const std::size_t n = slacks.size();
            for (int j = 0; j <= 10; ++j) {
                const auto idx = static_cast<std::size_t>(
                    std::llround(static_cast<double>(j) *
                                 static_cast<double>(n - 1) / 10.0));
                s.slack_deciles.push_back(slacks[idx]);
            }
        }
        for (int b = 1; b < kBranchLabels; ++b) {
            if (branch_min[b] < std::numeric_limits<double>::infinity()) {
                s.min_slack_by_branch.emplace_back(kBranchStrings[b],
                                                   branch_min[b]);
            }
        }
        return s;
    }
};

nlohmann::ordered_json record_json(const SamplerConfig& cfg, std::size_t index,
                                   const LeanOutcome& out) {
    nlohmann::ordered_json j;
    j["seed_index"] = index;
    j["dims"] = cfg.dims;
    j["x"] = out.x;
    j["y"] = out.y;
    j["z"] = out.z;
    if (out.has_sisa) j["z_abc"] = out.z;
    nlohmann::ordered_json bounds;
    for (std::size_t k = 0; k < out.bounds.size(); ++k) {
        const LeanBound& b = out.bounds[k];
        if (!b.applicable) continue;
        nlohmann::ordered_json e;
        e["value"] = b.value;
        e["slack"] = b.slack;
        if (b.branch > 0) e["branch"] = kBranchStrings[b.branch];
        bounds[kBoundNames[k]] = std::move(e);
    }
    if (out.has_sisa) {
        nlohmann::ordered_json e;
        e["value"] = out.sisa_value;
        e["slack"] = out.sisa_slack;
        bounds["sisa"] = std::move(e);
    }
    j["bounds"] = std::move(bounds);
    j["witness"] = out.witness;
    return j;
}

}  // namespace

const char* ensemble_name(Ensemble e) {
    switch (e) {
        case Ensemble::pure: return "pure";
        case Ensemble::rank_k: return "rank-k";
        case Ensemble::hs: default: return "hs";
    }
}

Ensemble ensemble_from_name(const std::string& name) {
    if (name == "hs") return Ensemble::hs;
    if (name == "pure") return Ensemble::pure;
    if (name == "rank-k" || name == "rank_k") return Ensemble::rank_k;
    throw ParameterError("unknown ensemble: " + name);
}

DensityMatrix sample_hs_state(const std::vector<int>& dims, SampleRng& rng) {
    return sample_rank_k_state(dims, 0, rng);
}

DensityMatrix sample_pure_state(const std::vector<int>& dims, SampleRng& rng) {
    std::size_t d = 1;
    for (int v : dims) d *= static_cast<std::size_t>(v);
    std::vector<cxd> amps(d);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = rng.cgauss();
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    return pure_state_density(amps, dims);
}

DensityMatrix sample_rank_k_state(const std::vector<int>& dims,
                                  std::size_t rank, SampleRng& rng) {
    std::size_t d = 1;
    for (int v : dims) {
        if (v < 2) throw ParameterError("sampler dims must be >= 2");
        d *= static_cast<std::size_t>(v);
    }
    const std::size_t k = rank == 0 ? d : rank;  // 0: full rank (HS measure)
    if (k > d) {
        throw ParameterError("rank " + std::to_string(k) +
                             " exceeds dimension " + std::to_string(d));
    }
    ComplexMatrix g(d, k);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            g(i, j) = rng.cgauss();
        }
    }
    ComplexMatrix w = g * adjoint(g);
    const double tr = trace(w).real();
    ComplexMatrix rho = cxd(1.0 / tr, 0.0) * w;
    return DensityMatrix(std::move(rho), dims);
}

CampaignReport run_campaign(const SamplerConfig& config) {
    if (config.dims.size() != 2 && config.dims.size() != 3) {
        throw ParameterError("campaign dims must name 2 or 3 subsystems");
    }
    for (int v : config.dims) {
        if (v < 2) throw ParameterError("campaign dims must be >= 2");
    }
    if (config.ensemble == Ensemble::rank_k) {
        std::size_t d = 1;
        for (int v : config.dims) d *= static_cast<std::size_t>(v);
        if (config.rank < 1 || config.rank > d) {
            throw ParameterError("rank must be in [1, dim]");
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    CampaignReport report;
    report.config = config;

    const std::size_t count = config.count;
    std::vector<LeanOutcome> outcomes(count);

    std::size_t workers = std::max<std::size_t>(1, config.workers);
    workers = std::min(workers, std::max<std::size_t>(1, count));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                const DensityMatrix state = draw_sample(config, i);
                fill_outcome(config, state, outcomes[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    if (workers == 1 || count == 0) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // Serial aggregation in index order keeps the outputs byte-identical for
    // any worker count.
    const bool tripartite = config.dims.size() == 3;
    const std::size_t slots = tripartite ? 9 : 8;
    std::vector<StatsAccum> accum(slots);

    std::ofstream jsonl;
    const bool writing = !config.output_prefix.empty();
    if (writing) {
        report.jsonl_path = config.output_prefix + ".jsonl";
        report.summary_path = config.output_prefix + ".summary.json";
        jsonl.open(report.jsonl_path);
        if (!jsonl) {
            report.io_error = "cannot open " + report.jsonl_path;
        }
    }

    for (std::size_t i = 0; i < count; ++i) {
        const LeanOutcome& out = outcomes[i];
        for (std::size_t k = 0; k < out.bounds.size(); ++k) {
            if (out.bounds[k].applicable) {
                accum[k].add(i, out.bounds[k].slack, out.bounds[k].branch);
            }
        }
        if (tripartite && out.has_sisa) {
            accum[8].add(i, out.sisa_slack, 0);
        }
        if (out.witness) ++report.witness_count;
        if (writing && report.io_error.empty()) {
            jsonl << record_json(config, i, out).dump() << "\n";
            if (!jsonl) report.io_error = "write failed: " + report.jsonl_path;
        }
        report.samples = i + 1;
        if (out.min_slack < kCampaignAbortSlack) {
            report.aborted = true;
            report.abort_reason =
                std::string(kBoundNames[static_cast<std::size_t>(out.worst)]) +
                " slack " + short_double(out.min_slack) +
                " below abort threshold at sample " + std::to_string(i);
            break;
        }
    }

    for (std::size_t k = 0; k < slots; ++k) {
        BoundStats s = accum[k].finish();
        report.total_violations += s.violations;
        report.bounds.emplace_back(kBoundNames[k], std::move(s));
    }

    if (writing && report.io_error.empty()) {
        jsonl.close();
        std::ofstream summary(report.summary_path);
        if (summary) {
            summary << campaign_summary_json(report).dump(2) << "\n";
            if (!summary) {
                report.io_error = "write failed: " + report.summary_path;
            }
        } else {
            report.io_error = "cannot open " + report.summary_path;
        }
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
}

nlohmann::ordered_json campaign_summary_json(const CampaignReport& report) {
    nlohmann::ordered_json j;
    j["dims"] = report.config.dims;
    j["ensemble"] = ensemble_name(report.config.ensemble);
    if (report.config.ensemble == Ensemble::rank_k) {
        j["rank"] = report.config.rank;
    }
    j["requested_samples"] = report.config.count;
    j["samples"] = report.samples;
    j["seed"] = report.config.seed;
    j["inject_extremal"] = report.config.inject_extremal;
    j["aborted"] = report.aborted;
    if (report.aborted) j["abort_reason"] = report.abort_reason;
    j["total_violations"] = report.total_violations;
    j["witness_count"] = report.witness_count;
    nlohmann::ordered_json bounds;
    for (const auto& [name, s] : report.bounds) {
        nlohmann::ordered_json e;
        e["applicable_count"] = s.applicable_count;
        e["violations"] = s.violations;
        if (s.applicable_count > 0) {
            e["min_slack"] = s.min_slack;
            e["argmin_index"] = s.argmin_index;
            e["slack_deciles"] = s.slack_deciles;
        }
        if (!s.min_slack_by_branch.empty()) {
            nlohmann::ordered_json by;
            for (const auto& [label, v] : s.min_slack_by_branch) by[label] = v;
            e["min_slack_by_branch"] = std::move(by);
        }
        bounds[name] = std::move(e);
    }
    j["bounds"] = std::move(bounds);
    return j;
}

IdentityCheckResult identity_suite(const std::vector<DimPair>& pairs,
                                   std::uint64_t seed) {
    IdentityCheckResult result;
    auto fail = [&result](const std::string& msg) {
        result.passed = false;
        result.failures.push_back(msg);
    };

    std::size_t pair_index = 0;
    for (const DimPair dims : pairs) {
        const std::string tag =
            std::to_string(dims.d_a) + "x" + std::to_string(dims.d_b);
        const double da = max_linear_entropy(dims.d_a);
        const double db = max_linear_entropy(dims.d_b);

        // Gap between the two everywhere-valid upper bounds is a perfect
        // square: appel - isa = (sqrt((1-x)/d_b) - sqrt((1-y)/d_a))^2.
        double worst = 0.0;
        double wx = 0.0, wy = 0.0;
        for (int i = 0; i <= 100; ++i) {
            for (int j = 0; j <= 100; ++j) {
                const double x = da * i / 100.0;
                const double y = db * j / 100.0;
                const double gap =
                    appel_nonlinear_bound(x, y, dims) - isa_h(x, y, dims);
                const double sq = std::sqrt((1.0 - x) / dims.d_b) -
                                  std::sqrt((1.0 - y) / dims.d_a);
                const double defect = std::abs(gap - sq * sq);
                if (defect > worst) {
                    worst = defect;
                    wx = x;
                    wy = y;
                }
            }
        }
        if (worst > 1e-12) {
            fail(tag + ": gap identity defect " + short_double(worst) +
                 " at (" + short_double(wx) + ", " + short_double(wy) + ")");
        }

        // On the branch seam both formulas must coincide.
        worst = 0.0;
        double wt = 0.0;
        for (int k = 1; k <= 100; ++k) {
            const double t = da * k / 101.0;
            const EntropyPoint p = gamma_curve(t, dims);
            const MaybeBound g = dssa_g(p.x, p.y, dims);
            const double h = isa_h(p.x, p.y, dims);
            if (!g.applicable) {
                fail(tag + ": curved bound inapplicable on seam at t = " +
                     short_double(t));
                continue;
            }
            const double defect = std::abs(g.value - h);
            if (defect > worst) {
                worst = defect;
                wt = t;
            }
        }
        if (worst > 1e-11) {
            fail(tag + ": seam coincidence defect " + short_double(worst) +
                 " at t = " + short_double(wt));
        }

        // The sharp bound is differentiable across the seam with gradient
        // (1/d_b, 1/d_a). On the seam the second derivative jumps, so the
        // central difference error is h * jump / 4, and the jump grows
        // toward the domain edges: h = 1e-8 keeps the worst sampled point
        // near 5e-7 with rounding noise around 1e-8.
        const double h_fd = 1e-8;
        for (int k = 0; k < 20; ++k) {
            const double t = da * (0.1 + 0.8 * k / 19.0);
            const EntropyPoint p = gamma_curve(t, dims);
            if (p.x - h_fd <= 0.0 || p.x + h_fd >= da || p.y - h_fd <= 0.0 ||
                p.y + h_fd >= db) {
                continue;
            }
            const double fx = (sharp_f(p.x + h_fd, p.y, dims).value -
                               sharp_f(p.x - h_fd, p.y, dims).value) /
                              (2.0 * h_fd);
            const double fy = (sharp_f(p.x, p.y + h_fd, dims).value -
                               sharp_f(p.x, p.y - h_fd, dims).value) /
                              (2.0 * h_fd);
            const double ex = std::abs(fx - 1.0 / dims.d_b);
            const double ey = std::abs(fy - 1.0 / dims.d_a);
            if (ex > 1e-6 || ey > 1e-6) {
                fail(tag + ": seam gradient off by (" + short_double(ex) +
                     ", " + short_double(ey) + ") at t = " + short_double(t));
            }
        }

        // Purity decomposes over the correlation tensor:
        // tr(rho^2) = (1 + |a|^2 + |b|^2 + |T|_F^2) / (d_a d_b).
        const std::vector<int> sdims{dims.d_a, dims.d_b};
        const OperatorBasis basis_a = gellmann_basis(dims.d_a);
        const OperatorBasis basis_b = gellmann_basis(dims.d_b);
        for (std::size_t s = 0; s < 50; ++s) {
            SampleRng rng(seed + 1000003 * pair_index, s);
            const DensityMatrix rho = sample_hs_state(sdims, rng);
            const CorrelationTensor ct =
                correlation_tensor(rho, basis_a, basis_b);
            double sum = 1.0;
            for (double v : ct.local_a) sum += v * v;
            for (double v : ct.local_b) sum += v * v;
            for (double v : ct.joint) sum += v * v;
            const double defect =
                std::abs(purity(rho) - sum / (dims.d_a * dims.d_b));
            if (defect > 1e-10) {
                fail(tag + ": purity decomposition defect " +
                     short_double(defect) + " at sample " + std::to_string(s));
            }
        }
        ++pair_index;
    }
    return result;
}

}  // namespace linent
