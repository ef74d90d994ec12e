#include <lenia_moqd/evolve/config.hpp>

#include <nlohmann/json.hpp>

#include <set>

namespace lenia_moqd::evolve {

namespace {

using nlohmann::json;

/// Reads known keys from one JSON object and rejects the rest.
class StrictObject {
public:
    StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    template <typename T>
    void read(const char* key, T& out)
    {
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end())
            return;
        try {
            if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
                if (!it->is_number_integer())
                    throw ConfigError(qualified(key), "expected an integer");
            } else if constexpr (std::is_floating_point_v<T>) {
                if (!it->is_number())
                    throw ConfigError(qualified(key), "expected a number");
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!it->is_boolean())
                    throw ConfigError(qualified(key), "expected a boolean");
            }
            out = it->template get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(qualified(key), e.what());
        }
    }

    void read(const char* key, Range& out)
    {
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end())
            return;
        if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
            throw ConfigError(qualified(key), "expected [lo, hi]");
        out.lo = (*it)[0].get<double>();
        out.hi = (*it)[1].get<double>();
    }

    /// Returns the nested object or nullptr when absent.
    const json* child(const char* key)
    {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const
    {
        for (const auto& [key, value] : j_.items())
            if (!seen_.contains(key))
                throw ConfigError(qualified(key), "unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string, std::less<>> seen_;
};

void require(bool ok, const std::string& key, const std::string& message)
{
    if (!ok)
        throw ConfigError(key, message);
}

void require_range(const Range& r, double lo, double hi, const std::string& key)
{
    require(r.lo <= r.hi, key, "lo must be <= hi");
    require(r.lo >= lo && r.hi <= hi, key, "must lie within [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

} // namespace

std::string to_string(FitnessMode mode)
{
    return mode == FitnessMode::homeostasis ? "homeostasis" : "multi_objective";
}

FitnessMode parse_fitness_mode(const std::string& text)
{
    if (text == "homeostasis")
        return FitnessMode::homeostasis;
    if (text == "multi_objective")
        return FitnessMode::multi_objective;
    throw ConfigError("fitness_mode", "expected homeostasis or multi_objective, got '" + text + "'");
}

EvolutionConfig desk_config() { return EvolutionConfig{}; }

void EvolutionConfig::validate() const
{
    require(generations >= 1, "generations", "must be >= 1");
    require(batch_size >= 1, "batch_size", "must be >= 1");
    require(capacity >= 1, "capacity", "must be >= 1");
    require(grid.height >= 8 && grid.width >= 8, "grid", "height and width must be >= 8");
    require(grid.channels >= 1, "grid.channels", "must be >= 1");
    require(steps >= 1, "steps", "must be >= 1");
    require(trace_samples >= 1, "trace_samples", "must be >= 1");
    require(sigma > 0.0, "sigma", "must be > 0");
    require(checkpoint_every >= 1, "checkpoint_every", "must be >= 1");
    require(threads >= 0, "threads", "must be >= 0");

    require(encoder.latent_dim >= 1, "encoder.latent_dim", "must be >= 1");
    require(encoder.hidden >= 1, "encoder.hidden", "must be >= 1");
    require(encoder.pool_size >= 1, "encoder.pool_size", "must be >= 1");
    require(grid.height % encoder.pool_size == 0 && grid.width % encoder.pool_size == 0, "encoder.pool_size",
            "must divide the grid height and width");
    require(encoder.learning_rate > 0.0, "encoder.learning_rate", "must be > 0");
    require(encoder.beta >= 0.0, "encoder.beta", "must be >= 0");
    require(encoder.momentum >= 0.0 && encoder.momentum < 1.0, "encoder.momentum", "must be in [0, 1)");
    require(encoder.batch_size >= 1, "encoder.batch_size", "must be >= 1");
    require(encoder.pretrain_steps >= 0, "encoder.pretrain_steps", "must be >= 0");
    require(encoder.refresh_period >= 1, "encoder.refresh_period", "must be >= 1");
    require(encoder.refresh_epochs >= 0, "encoder.refresh_epochs", "must be >= 0");

    const auto& m = mutation;
    for (const auto& [key, value] : {std::pair{"mutation.radius_fraction", m.radius_fraction},
                                     {"mutation.ring_height", m.ring_height},
                                     {"mutation.ring_center", m.ring_center},
                                     {"mutation.ring_width", m.ring_width},
                                     {"mutation.growth_mu", m.growth_mu},
                                     {"mutation.growth_sigma", m.growth_sigma},
                                     {"mutation.weight", m.weight},
                                     {"mutation.dt", m.dt},
                                     {"mutation.base_radius", m.base_radius},
                                     {"mutation.seed_pattern", m.seed_pattern}})
        require(value > 0.0, key, "mutation scales must be > 0");

    const int min_side = std::min(grid.height, grid.width);
    require(init.min_kernels >= 1 && init.min_kernels <= init.max_kernels && init.max_kernels <= 16, "init.max_kernels",
            "need 1 <= min_kernels <= max_kernels <= 16");
    require(init.max_rings >= 1, "init.max_rings", "must be >= 1");
    require(init.seed_size >= 1 && init.seed_size <= min_side / 2, "init.seed_size", "must be in [1, min(H, W) / 2]");
    require(init.min_radius >= 2 && init.min_radius <= init.max_radius && init.max_radius <= min_side / 4,
            "init.max_radius", "need 2 <= min_radius <= max_radius <= min(H, W) / 4");
    require_range(init.radius_fraction, 0.0, 1.0, "init.radius_fraction");
    require(init.radius_fraction.lo * init.min_radius >= 1.0, "init.radius_fraction",
            "lo * min_radius must be >= 1");
    require_range(init.ring_height, 0.0, 1.0, "init.ring_height");
    require(init.ring_height.hi > 0.0, "init.ring_height", "hi must be > 0");
    require_range(init.ring_center, 0.0, 1.0, "init.ring_center");
    require_range(init.ring_width, 1e-3, 0.5, "init.ring_width");
    require_range(init.growth_mu, 0.0, 1.0, "init.growth_mu");
    require_range(init.growth_sigma, 1e-3, 1.0, "init.growth_sigma");
    require_range(init.weight, 0.0, 1.0, "init.weight");
    require_range(init.dt, 1e-3, 1.0, "init.dt");
    require_range(init.seed_value, 0.0, 1.0, "init.seed_value");
}

void to_json(json& j, const EvolutionConfig& c)
{
    const auto& e = c.encoder;
    const auto& m = c.mutation;
    const auto& i = c.init;
    j = json{{"generations", c.generations},
             {"batch_size", c.batch_size},
             {"capacity", c.capacity},
             {"fitness_mode", to_string(c.fitness_mode)},
             {"grid", {{"height", c.grid.height}, {"width", c.grid.width}, {"channels", c.grid.channels}}},
             {"steps", c.steps},
             {"trace_samples", c.trace_samples},
             {"sigma", c.sigma},
             {"adaptive_sigma", c.adaptive_sigma},
             {"encoder",
              {{"latent_dim", e.latent_dim},
               {"hidden", e.hidden},
               {"pool_size", e.pool_size},
               {"learning_rate", e.learning_rate},
               {"beta", e.beta},
               {"momentum", e.momentum},
               {"batch_size", e.batch_size},
               {"pretrain_steps", e.pretrain_steps},
               {"refresh_period", e.refresh_period},
               {"refresh_epochs", e.refresh_epochs}}},
             {"mutation",
              {{"radius_fraction", m.radius_fraction},
               {"ring_height", m.ring_height},
               {"ring_center", m.ring_center},
               {"ring_width", m.ring_width},
               {"growth_mu", m.growth_mu},
               {"growth_sigma", m.growth_sigma},
               {"weight", m.weight},
               {"dt", m.dt},
               {"base_radius", m.base_radius},
               {"seed_pattern", m.seed_pattern}}},
             {"init",
              {{"min_kernels", i.min_kernels},
               {"max_kernels", i.max_kernels},
               {"max_rings", i.max_rings},
               {"seed_size", i.seed_size},
               {"min_radius", i.min_radius},
               {"max_radius", i.max_radius},
               {"radius_fraction", range_json(i.radius_fraction)},
               {"ring_height", range_json(i.ring_height)},
               {"ring_center", range_json(i.ring_center)},
               {"ring_width", range_json(i.ring_width)},
               {"growth_mu", range_json(i.growth_mu)},
               {"growth_sigma", range_json(i.growth_sigma)},
               {"weight", range_json(i.weight)},
               {"dt", range_json(i.dt)},
               {"seed_value", range_json(i.seed_value)}}},
             {"checkpoint_every", c.checkpoint_every},
             {"seed", c.seed},
             {"threads", c.threads}};
}

EvolutionConfig config_from_json(const json& j)
{
    EvolutionConfig c;
    StrictObject root(j, "");
    root.read("generations", c.generations);
    root.read("batch_size", c.batch_size);
    root.read("capacity", c.capacity);
    std::string mode = to_string(c.fitness_mode);
    root.read("fitness_mode", mode);
    c.fitness_mode = parse_fitness_mode(mode);
    root.read("steps", c.steps);
    root.read("trace_samples", c.trace_samples);
    root.read("sigma", c.sigma);
    root.read("adaptive_sigma", c.adaptive_sigma);
    root.read("checkpoint_every", c.checkpoint_every);
    root.read("seed", c.seed);
    root.read("threads", c.threads);

    if (const auto* g = root.child("grid")) {
        StrictObject grid(*g, "grid");
        grid.read("height", c.grid.height);
        grid.read("width", c.grid.width);
        grid.read("channels", c.grid.channels);
        grid.finish();
    }
    if (const auto* e = root.child("encoder")) {
        StrictObject enc(*e, "encoder");
        enc.read("latent_dim", c.encoder.latent_dim);
        enc.read("hidden", c.encoder.hidden);
        enc.read("pool_size", c.encoder.pool_size);
        enc.read("learning_rate", c.encoder.learning_rate);
        enc.read("beta", c.encoder.beta);
        enc.read("momentum", c.encoder.momentum);
        enc.read("batch_size", c.encoder.batch_size);
        enc.read("pretrain_steps", c.encoder.pretrain_steps);
        enc.read("refresh_period", c.encoder.refresh_period);
        enc.read("refresh_epochs", c.encoder.refresh_epochs);
        enc.finish();
    }
    if (const auto* m = root.child("mutation")) {
        StrictObject mut(*m, "mutation");
        mut.read("radius_fraction", c.mutation.radius_fraction);
        mut.read("ring_height", c.mutation.ring_height);
        mut.read("ring_center", c.mutation.ring_center);
        mut.read("ring_width", c.mutation.ring_width);
        mut.read("growth_mu", c.mutation.growth_mu);
        mut.read("growth_sigma", c.mutation.growth_sigma);
        mut.read("weight", c.mutation.weight);
        mut.read("dt", c.mutation.dt);
        mut.read("base_radius", c.mutation.base_radius);
        mut.read("seed_pattern", c.mutation.seed_pattern);
        mut.finish();
    }
    if (const auto* i = root.child("init")) {
        StrictObject init(*i, "init");
        init.read("min_kernels", c.init.min_kernels);
        init.read("max_kernels", c.init.max_kernels);
        init.read("max_rings", c.init.max_rings);
        init.read("seed_size", c.init.seed_size);
        init.read("min_radius", c.init.min_radius);
        init.read("max_radius", c.init.max_radius);
        init.read("radius_fraction", c.init.radius_fraction);
        init.read("ring_height", c.init.ring_height);
        init.read("ring_center", c.init.ring_center);
        init.read("ring_width", c.init.ring_width);
        init.read("growth_mu", c.init.growth_mu);
        init.read("growth_sigma", c.init.growth_sigma);
        init.read("weight", c.init.weight);
        init.read("dt", c.init.dt);
        init.read("seed_value", c.init.seed_value);
        init.finish();
    }
    root.finish();
    c.validate();
    return c;
}

} // namespace lenia_moqd::evolve
