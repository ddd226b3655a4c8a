#include "pllpinn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace pllpinn {

void DomainSpec::validate() const {
    if (!(delta_min < delta_max) || !(omega_min < omega_max) ||
        !(alpha_min < alpha_max))
        throw std::invalid_argument("DomainSpec: ranges must be nonempty");
    if (!(alpha_min > 0.0))
        throw std::invalid_argument("DomainSpec: alpha range must be positive");
    if (!(window > 0.0) || !(test_window > 0.0))
        throw std::invalid_argument("DomainSpec: windows must be > 0");
}

bool DomainSpec::contains(double delta, double omega, double alpha) const {
    return delta >= delta_min && delta <= delta_max && omega >= omega_min &&
           omega <= omega_max && alpha >= alpha_min && alpha <= alpha_max;
}

InitialDraw sample_initial(Rng& rng, const DomainSpec& spec) {
    InitialDraw d;
    d.x0.delta = rng.uniform(spec.delta_min, spec.delta_max);
    d.x0.omega = rng.uniform(spec.omega_min, spec.omega_max);
    d.alpha = rng.uniform(spec.alpha_min, spec.alpha_max);
    return d;
}

Dataset generate_labeled(int n_traj, const DomainSpec& spec, std::uint64_t seed,
                         const SystemParams& base, const GenConfig& cfg) {
    spec.validate();
    base.validate();
    if (n_traj < 1 || cfg.samples_per_traj < 1)
        throw std::invalid_argument("generate_labeled: counts must be >= 1");

    const double window = cfg.window > 0.0 ? cfg.window : spec.window;
    const auto n_steps = static_cast<std::int64_t>(
        std::max<std::int64_t>(1, std::llround(window / cfg.dt)));

    Dataset ds;
    ds.spec = spec;
    ds.seed = seed;
    ds.samples_per_traj = cfg.samples_per_traj;
    ds.samples.reserve(static_cast<std::size_t>(n_traj) * cfg.samples_per_traj);

    std::vector<std::int64_t> steps(static_cast<std::size_t>(cfg.samples_per_traj));
    for (int i = 0; i < n_traj; ++i) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
        const InitialDraw draw = sample_initial(rng, spec);
        const SystemParams params = scale_impedance(base, draw.alpha);

        if (cfg.fixed_time_grid) {
            // Evenly spaced grid (k/n)*window for k = 1..n, on fine steps.
            for (int k = 0; k < cfg.samples_per_traj; ++k)
                steps[static_cast<std::size_t>(k)] =
                    n_steps * (k + 1) / cfg.samples_per_traj;
        } else {
            // Random times quantized to the fine solver grid so labels are
            // exact solver states, not interpolants.
            for (auto& s : steps)
                s = static_cast<std::int64_t>(
                    rng.uniform_index(static_cast<std::uint64_t>(n_steps) + 1));
            std::sort(steps.begin(), steps.end());
        }

        const CaptureResult cap = integrate_capture(
            draw.x0, params, cfg.dt, cfg.omega_blowup, steps);
        for (std::size_t k = 0; k < cap.captured; ++k) {
            Sample s;
            s.t = static_cast<double>(steps[k]) * cfg.dt;
            s.x0 = draw.x0;
            s.alpha = draw.alpha;
            s.x_t = cap.states[k];
            ds.samples.push_back(s);
        }
    }
    ds.norm = compute_norm_stats(ds.samples);
    return ds;
}

std::vector<CollocationPoint> generate_collocation(int n, const DomainSpec& spec,
                                                   std::uint64_t seed,
                                                   double window) {
    spec.validate();
    if (n < 0) throw std::invalid_argument("generate_collocation: n must be >= 0");
    const double w = window > 0.0 ? window : spec.window;
    std::vector<CollocationPoint> points(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i));
        CollocationPoint& p = points[static_cast<std::size_t>(i)];
        const InitialDraw draw = sample_initial(rng, spec);
        p.x0 = draw.x0;
        p.alpha = draw.alpha;
        p.t = rng.uniform(0.0, w);
    }
    return points;
}

NormStats compute_norm_stats(const std::vector<Sample>& samples) {
    NormStats stats;
    if (samples.empty()) return stats;
    const double n = static_cast<double>(samples.size());
    std::array<double, 4> sum{}, sumsq{};
    for (const Sample& s : samples) {
        const std::array<double, 4> v{s.t, s.x0.delta, s.x0.omega, s.alpha};
        for (int k = 0; k < 4; ++k) {
            sum[k] += v[k];
            sumsq[k] += v[k] * v[k];
        }
    }
    for (int k = 0; k < 4; ++k) {
        stats.mean[k] = sum[k] / n;
        const double var = std::max(0.0, sumsq[k] / n - stats.mean[k] * stats.mean[k]);
        stats.scale[k] = std::max(std::sqrt(var), 1e-12);
    }
    return stats;
}

std::array<double, 2> residual_scales(const Dataset& ds, const SystemParams& base) {
    std::array<double, 2> sum{}, sumsq{};
    if (ds.samples.empty()) return {1.0, 1.0};
    for (const Sample& s : ds.samples) {
        const StateDerivative d =
            rhs(s.t, s.x_t, scale_impedance(base, s.alpha));
        sum[0] += d.d_delta;
        sumsq[0] += d.d_delta * d.d_delta;
        sum[1] += d.d_omega;
        sumsq[1] += d.d_omega * d.d_omega;
    }
    const double n = static_cast<double>(ds.samples.size());
    std::array<double, 2> out;
    for (int k = 0; k < 2; ++k) {
        const double mean = sum[k] / n;
        out[k] = std::max(std::sqrt(std::max(0.0, sumsq[k] / n - mean * mean)), 1e-12);
    }
    return out;
}

// --- file I/O -------------------------------------------------------------

namespace {

void write_doubles(std::ostream& os, const double* v, std::size_t n) {
    // Little-endian host assumed (x86/arm64); format is defined little-endian.
    os.write(reinterpret_cast<const char*>(v),
             static_cast<std::streamsize>(n * sizeof(double)));
}

void write_spec_header(std::ostream& os, const DomainSpec& spec) {
    os.precision(17);
    os << "delta_range " << spec.delta_min << ' ' << spec.delta_max << '\n'
       << "omega_range " << spec.omega_min << ' ' << spec.omega_max << '\n'
       << "alpha_range " << spec.alpha_min << ' ' << spec.alpha_max << '\n'
       << "window " << spec.window << '\n'
       << "test_window " << spec.test_window << '\n';
}

struct HeaderReader {
    std::istream& is;
    std::string line;

    bool next() { return static_cast<bool>(std::getline(is, line)); }

    /// Returns the value part of "key value..." or throws.
    std::istringstream expect(const std::string& key) {
        if (!next()) throw MalformedFileError("truncated header: expected " + key);
        std::istringstream ss(line);
        std::string k;
        ss >> k;
        if (k != key)
            throw MalformedFileError("bad header line, expected '" + key +
                                     "', got '" + line + "'");
        return ss;
    }
};

DomainSpec read_spec_header(HeaderReader& hr) {
    DomainSpec spec;
    hr.expect("delta_range") >> spec.delta_min >> spec.delta_max;
    hr.expect("omega_range") >> spec.omega_min >> spec.omega_max;
    hr.expect("alpha_range") >> spec.alpha_min >> spec.alpha_max;
    hr.expect("window") >> spec.window;
    hr.expect("test_window") >> spec.test_window;
    return spec;
}

} // namespace

void save_dataset(const Dataset& ds, const std::string& path,
                  const std::string& config_digest) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_dataset: cannot open " + path);
    os << "pllpinn-dataset v1\n";
    os << "seed " << ds.seed << '\n';
    write_spec_header(os, ds.spec);
    os << "samples_per_traj " << ds.samples_per_traj << '\n';
    os.precision(17);
    os << "norm_mean " << ds.norm.mean[0] << ' ' << ds.norm.mean[1] << ' '
       << ds.norm.mean[2] << ' ' << ds.norm.mean[3] << '\n';
    os << "norm_scale " << ds.norm.scale[0] << ' ' << ds.norm.scale[1] << ' '
       << ds.norm.scale[2] << ' ' << ds.norm.scale[3] << '\n';
    if (!config_digest.empty()) os << "config_digest " << config_digest << '\n';
    os << "count " << ds.samples.size() << '\n';
    os << "binary\n";
    for (const Sample& s : ds.samples) {
        const double rec[6] = {s.t, s.x0.delta, s.x0.omega, s.alpha,
                               s.x_t.delta, s.x_t.omega};
        write_doubles(os, rec, 6);
    }
    if (!os) throw std::runtime_error("save_dataset: write failed on " + path);
}

Dataset load_dataset(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw MalformedFileError("load_dataset: cannot open " + path);
    HeaderReader hr{is};
    if (!hr.next() || hr.line != "pllpinn-dataset v1")
        throw MalformedFileError("load_dataset: bad magic/version in " + path);

    Dataset ds;
    hr.expect("seed") >> ds.seed;
    ds.spec = read_spec_header(hr);
    hr.expect("samples_per_traj") >> ds.samples_per_traj;
    {
        auto ss = hr.expect("norm_mean");
        ss >> ds.norm.mean[0] >> ds.norm.mean[1] >> ds.norm.mean[2] >> ds.norm.mean[3];
    }
    {
        auto ss = hr.expect("norm_scale");
        ss >> ds.norm.scale[0] >> ds.norm.scale[1] >> ds.norm.scale[2] >> ds.norm.scale[3];
    }
    std::size_t count = 0;
    while (true) {
        if (!hr.next()) throw MalformedFileError("load_dataset: truncated header");
        std::istringstream ss(hr.line);
        std::string key;
        ss >> key;
        if (key == "config_digest") continue;
        if (key == "count") {
            ss >> count;
            break;
        }
        throw MalformedFileError("load_dataset: unexpected header line '" + hr.line + "'");
    }
    if (!hr.next() || hr.line != "binary")
        throw MalformedFileError("load_dataset: missing binary marker");

    ds.samples.resize(count);
    for (Sample& s : ds.samples) {
        double rec[6];
        is.read(reinterpret_cast<char*>(rec), sizeof(rec));
        if (!is) throw MalformedFileError("load_dataset: truncated records in " + path);
        s.t = rec[0];
        s.x0 = PllState{rec[1], rec[2]};
        s.alpha = rec[3];
        s.x_t = PllState{rec[4], rec[5]};
    }
    return ds;
}

void save_collocation(const std::vector<CollocationPoint>& points,
                      const DomainSpec& spec, std::uint64_t seed,
                      const std::string& path, const std::string& config_digest) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_collocation: cannot open " + path);
    os << "pllpinn-colloc v1\n";
    os << "seed " << seed << '\n';
    write_spec_header(os, spec);
    if (!config_digest.empty()) os << "config_digest " << config_digest << '\n';
    os << "count " << points.size() << '\n';
    os << "binary\n";
    for (const CollocationPoint& p : points) {
        const double rec[4] = {p.t, p.x0.delta, p.x0.omega, p.alpha};
        write_doubles(os, rec, 4);
    }
    if (!os) throw std::runtime_error("save_collocation: write failed on " + path);
}

CollocationSet load_collocation(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw MalformedFileError("load_collocation: cannot open " + path);
    HeaderReader hr{is};
    if (!hr.next() || hr.line != "pllpinn-colloc v1")
        throw MalformedFileError("load_collocation: bad magic/version in " + path);
    CollocationSet set;
    hr.expect("seed") >> set.seed;
    set.spec = read_spec_header(hr);
    std::size_t count = 0;
    while (true) {
        if (!hr.next()) throw MalformedFileError("load_collocation: truncated header");
        std::istringstream ss(hr.line);
        std::string key;
        ss >> key;
        if (key == "config_digest") continue;
        if (key == "count") {
            ss >> count;
            break;
        }
        throw MalformedFileError("load_collocation: unexpected header line '" +
                                 hr.line + "'");
    }
    if (!hr.next() || hr.line != "binary")
        throw MalformedFileError("load_collocation: missing binary marker");
    set.points.resize(count);
    for (CollocationPoint& p : set.points) {
        double rec[4];
        is.read(reinterpret_cast<char*>(rec), sizeof(rec));
        if (!is)
            throw MalformedFileError("load_collocation: truncated records in " + path);
        p.t = rec[0];
        p.x0 = PllState{rec[1], rec[2]};
        p.alpha = rec[3];
    }
    return set;
}

std::uint64_t file_checksum(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("file_checksum: cannot open " + path);
    char buf[1 << 16];
    std::uint64_t h = 0xcbf29ce484222325ULL;
    while (is) {
        is.read(buf, sizeof(buf));
        h = fnv1a64(buf, static_cast<std::size_t>(is.gcount()), h);
    }
    return h;
}

} // namespace pllpinn
