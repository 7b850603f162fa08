#include "nspso/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace nspso {

namespace {

    std::string trim(const std::string& s)
    {
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            return "";
        const auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    }

    long long parse_integer(const std::string& key, const std::string& value)
    {
        std::size_t consumed = 0;
        long long out = 0;
        try {
            out = std::stoll(value, &consumed);
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': '" + value + "' is not an integer");
        }
        if (consumed != value.size())
            throw ConfigError("key '" + key + "': '" + value + "' is not an integer");
        return out;
    }

    double parse_real(const std::string& key, const std::string& value)
    {
        std::size_t consumed = 0;
        double out = 0.0;
        try {
            out = std::stod(value, &consumed);
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': '" + value + "' is not a number");
        }
        if (consumed != value.size())
            throw ConfigError("key '" + key + "': '" + value + "' is not a number");
        return out;
    }

    void apply_config_key(RunConfig& config, const std::string& key, const std::string& value)
    {
        if (key == "leader_count")
            config.leader_count = static_cast<int>(parse_integer(key, value));
        else if (key == "swarm_size")
            config.swarm_size = static_cast<int>(parse_integer(key, value));
        else if (key == "radius_initial")
            config.radius_initial = parse_real(key, value);
        else if (key == "radius_increment")
            config.radius_increment = parse_real(key, value);
        else if (key == "novelty_threshold")
            config.novelty_threshold = parse_real(key, value);
        else if (key == "threshold_decay")
            config.threshold_decay = parse_real(key, value);
        else if (key == "fitness_threshold")
            config.fitness_threshold = parse_real(key, value);
        else if (key == "max_iterations_outer")
            config.max_iterations_outer = parse_integer(key, value);
        else if (key == "inner_max_iterations")
            config.inner_max_iterations = static_cast<int>(parse_integer(key, value));
        else if (key == "max_fes")
            config.max_fes = parse_integer(key, value);
        else if (key == "seed")
            config.seed = static_cast<std::uint64_t>(parse_integer(key, value));
        else
            throw ConfigError("unknown run-config key '" + key + "'");
    }

    std::vector<std::pair<FunctionId, int>> parse_problem_list(const std::string& value)
    {
        std::vector<std::pair<FunctionId, int>> out;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty())
                continue;
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw ConfigError("problem entry '" + item + "' must look like f1:10");
            const FunctionId id = parse_function_id(trim(item.substr(0, colon)));
            const int dim
                = static_cast<int>(parse_integer("problems", trim(item.substr(colon + 1))));
            out.emplace_back(id, dim);
        }
        if (out.empty())
            throw ConfigError("key 'problems' lists no problems");
        return out;
    }

    bool split_key_value(const std::string& line, std::string& key, std::string& value)
    {
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            return false;
        key = trim(line.substr(0, eq));
        value = trim(line.substr(eq + 1));
        return !key.empty();
    }

    struct RunOutcome {
        double final_fitness = 0.0;
        long long evaluations = 0;
    };

    void check_spec(const ExperimentSpec& spec)
    {
        if (spec.repetitions < 1)
            throw ConfigError("repetitions must be positive");
        if (spec.problems.empty())
            throw ConfigError("the experiment lists no problems");
        if (spec.configs.empty())
            throw ConfigError("the experiment lists no configs");
        std::string bad;
        for (const auto& [id, dim] : spec.problems) {
            if (dim < 1 || (is_mmf(id) && dim != 2))
                bad += (bad.empty() ? "" : ", ") + to_string(id) + ":" + std::to_string(dim);
        }
        if (!bad.empty())
            throw ConfigError("invalid problem cells: " + bad);
    }

} // namespace

std::string format_g17(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::vector<SummaryRow> run_experiment(const ExperimentSpec& spec, int threads)
{
    check_spec(spec);

    std::vector<Problem> problems;
    problems.reserve(spec.problems.size());
    for (const auto& [id, dim] : spec.problems)
        problems.push_back(make_problem(id, dim));

    // Surface config errors before any run starts.
    for (const auto& problem : problems)
        for (const auto& [name, config] : spec.configs)
            validate(config, problem);

    struct Task {
        std::size_t problem_index;
        std::size_t config_index;
        int repetition;
    };
    std::vector<Task> tasks;
    tasks.reserve(problems.size() * spec.configs.size() * spec.repetitions);
    for (std::size_t pi = 0; pi < problems.size(); ++pi)
        for (std::size_t ci = 0; ci < spec.configs.size(); ++ci)
            for (int k = 0; k < spec.repetitions; ++k)
                tasks.push_back({pi, ci, k});

    std::vector<std::vector<std::vector<RunOutcome>>> outcomes(problems.size());
    for (auto& per_problem : outcomes)
        per_problem.assign(spec.configs.size(), std::vector<RunOutcome>(spec.repetitions));

    const auto execute = [&](const Task& task) {
        const auto& [name, base_config] = spec.configs[task.config_index];
        RunConfig config = base_config;
        config.seed = spec.base_seed + static_cast<std::uint64_t>(task.repetition);
        const Problem& problem = problems[task.problem_index];
        const RunResult result = name == kBaselineConfigName
            ? run_baseline_bbpso(problem, config)
            : run(problem, config);
        outcomes[task.problem_index][task.config_index][task.repetition]
            = {result.best_fitness, result.evaluations_used};
    };

    unsigned worker_count = threads > 0
        ? static_cast<unsigned>(threads)
        : std::max(1u, std::thread::hardware_concurrency());
    worker_count = std::min<unsigned>(worker_count, tasks.size());
    if (worker_count <= 1) {
        for (const auto& task : tasks)
            execute(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (unsigned w = 0; w < worker_count; ++w)
            pool.emplace_back([&] {
                for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();)
                    execute(tasks[t]);
            });
        for (auto& worker : pool)
            worker.join();
    }

    std::vector<SummaryRow> rows;
    rows.reserve(problems.size() * spec.configs.size());
    for (std::size_t pi = 0; pi < problems.size(); ++pi) {
        std::vector<double> reference_finals;
        for (std::size_t ci = 0; ci < spec.configs.size(); ++ci) {
            std::vector<double> finals(spec.repetitions);
            std::vector<double> evals(spec.repetitions);
            for (int k = 0; k < spec.repetitions; ++k) {
                finals[k] = outcomes[pi][ci][k].final_fitness;
                evals[k] = static_cast<double>(outcomes[pi][ci][k].evaluations);
            }
            SummaryRow row;
            row.problem = spec.problems[pi].first;
            row.dim = spec.problems[pi].second;
            row.config_name = spec.configs[ci].first;
            row.mean_final = mean(finals);
            row.std_final = sample_stddev(finals);
            row.median_final = median(finals);
            row.mean_evals = mean(evals);
            if (ci == 0)
                reference_finals = finals;
            else if (spec.repetitions >= 5)
                row.h_vs_reference = wilcoxon_rank_sum(reference_finals, finals).h;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void emit_csv(const std::vector<SummaryRow>& rows, std::ostream& out)
{
    if (rows.empty())
        throw std::invalid_argument("emit_csv: no rows");
    std::vector<SummaryRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const SummaryRow& a, const SummaryRow& b) {
        return std::tuple(index_of(a.problem), a.dim, a.config_name)
            < std::tuple(index_of(b.problem), b.dim, b.config_name);
    });
    out << "problem,dim,config,mean,std,median,mean_evals,h\n";
    for (const auto& row : sorted) {
        out << to_string(row.problem) << ',' << row.dim << ',' << row.config_name << ','
            << format_g17(row.mean_final) << ',' << format_g17(row.std_final) << ','
            << format_g17(row.median_final) << ',' << format_g17(row.mean_evals) << ',';
        if (row.h_vs_reference)
            out << *row.h_vs_reference;
        out << '\n';
    }
}

void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    emit_csv(rows, out);
    if (!out)
        throw IoError("failed writing results to '" + path + "'");
}

RunConfig parse_run_config(std::istream& in)
{
    RunConfig config;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        std::string key, value;
        if (!split_key_value(line, key, value))
            throw ConfigError("malformed config line '" + line + "'");
        apply_config_key(config, key, value);
    }
    return config;
}

RunConfig parse_run_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path + "'");
    return parse_run_config(in);
}

ExperimentSpec parse_experiment_spec(std::istream& in)
{
    ExperimentSpec spec;
    RunConfig* current = nullptr;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header '" + line + "'");
            std::istringstream header(line.substr(1, line.size() - 2));
            std::string kind, name;
            header >> kind >> name;
            if (kind != "config" || name.empty())
                throw ConfigError("unknown section '" + line + "' (expected [config NAME])");
            for (const auto& [existing, _] : spec.configs)
                if (existing == name)
                    throw ConfigError("duplicate config name '" + name + "'");
            spec.configs.emplace_back(name, RunConfig{});
            current = &spec.configs.back().second;
            continue;
        }
        std::string key, value;
        if (!split_key_value(line, key, value))
            throw ConfigError("malformed spec line '" + line + "'");
        if (current) {
            apply_config_key(*current, key, value);
        } else if (key == "problems") {
            spec.problems = parse_problem_list(value);
        } else if (key == "repetitions") {
            spec.repetitions = static_cast<int>(parse_integer(key, value));
        } else if (key == "base_seed") {
            spec.base_seed = static_cast<std::uint64_t>(parse_integer(key, value));
        } else if (key == "output_path") {
            spec.output_path = value;
        } else {
            throw ConfigError("unknown experiment key '" + key + "'");
        }
    }
    if (spec.configs.empty())
        throw ConfigError("the spec defines no [config NAME] section");
    return spec;
}

ExperimentSpec parse_experiment_spec_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open spec file '" + path + "'");
    return parse_experiment_spec(in);
}

} // namespace nspso
