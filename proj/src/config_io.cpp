// SPDX-License-Identifier: Apache-2.0
#include "qmrts/config_io.hpp"

#include "qmrts/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qmrts {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>, std::less<>> kSchema = {
    {"chirp", {"fc_hz", "b_hz", "t_s", "ns"}},
    {"array", {"ntx", "nrx", "dtx_m", "dtx_lambda", "drx_m", "drx_lambda"}},
    {"rts", {"rc_m", "theta_rx_deg", "theta_tx_deg", "tau_rts_s", "f_rts_hz", "amplitude"}},
    {"grid", {"angle_min_deg", "angle_max_deg", "angle_step_deg"}},
    {"sweep", {"d_max_m", "points", "subsets", "range_compensation"}},
};

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// ptree's INI reader only knows ';' comments; accept '#' as well.
std::string strip_hash_comments(std::string_view text)
{
    std::string out;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        const auto t = trim(line);
        if (!t.empty() && t.front() == '#')
            continue;
        out += line;
        out += '\n';
    }
    return out;
}

class Section {
public:
    Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

    bool present() const { return tree_ != nullptr; }

    bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }

    std::string raw(const std::string& key) const
    {
        if (!has(key))
            throw ValidationError(fmt::format("[{}] missing required key {}", name_, key));
        return trim(tree_->get<std::string>(key));
    }

    double number(const std::string& key) const
    {
        const auto text = raw(key);
        double value = 0.0;
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, value);
        if (ec != std::errc{} || ptr != end || !std::isfinite(value))
            throw ParseError(fmt::format("[{}] {}: '{}' is not a number", name_, key, text));
        return value;
    }

    double number_or(const std::string& key, double fallback) const
    {
        return has(key) ? number(key) : fallback;
    }

    std::size_t count(const std::string& key) const
    {
        const auto text = raw(key);
        long long value = 0;
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, value);
        if (ec != std::errc{} || ptr != end)
            throw ParseError(fmt::format("[{}] {}: '{}' is not an integer", name_, key, text));
        if (value < 0)
            throw ValidationError(fmt::format("[{}] {}: must not be negative", name_, key));
        return static_cast<std::size_t>(value);
    }

    std::size_t count_or(const std::string& key, std::size_t fallback) const
    {
        return has(key) ? count(key) : fallback;
    }

    bool flag(const std::string& key) const
    {
        const auto text = raw(key);
        if (text == "true")
            return true;
        if (text == "false")
            return false;
        throw ParseError(fmt::format("[{}] {}: expected true or false, got '{}'", name_, key, text));
    }

    // Exactly one of <base>_m and <base>_lambda.
    double spacing(const std::string& base, double wavelength) const
    {
        const auto metres = base + "_m";
        const auto lambdas = base + "_lambda";
        if (has(metres) == has(lambdas))
            throw ValidationError(fmt::format("[{}] exactly one of {} and {} is required", name_,
                                              metres, lambdas));
        return has(metres) ? number(metres) : number(lambdas) * wavelength;
    }

private:
    std::string name_;
    const pt::ptree* tree_;
};

std::vector<std::string> split_list(std::string_view text)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
        if (item.empty())
            throw ParseError("[sweep] subsets: empty entry in list");
        out.push_back(item);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

ScenarioDocument load_document(std::string_view text)
{
    pt::ptree tree;
    try {
        std::istringstream in(strip_hash_comments(text));
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(fmt::format("line {}: {}", e.line(), e.message()));
    }

    for (const auto& [name, section] : tree) {
        const auto schema = kSchema.find(name);
        if (schema == kSchema.end() || !section.data().empty())
            throw ParseError(fmt::format("unknown section or top-level key '{}'", name));
        for (const auto& [key, value] : section)
            if (!schema->second.contains(key))
                throw ParseError(fmt::format("[{}] unknown key '{}'", name, key));
    }

    auto section = [&](const std::string& name) {
        const auto it = tree.find(name);
        return Section(name, it == tree.not_found() ? nullptr : &it->second);
    };

    const auto chirp = section("chirp");
    const auto array = section("array");
    const auto rts = section("rts");
    if (!chirp.present())
        throw ValidationError("missing section [chirp] (fc_hz, b_hz)");
    if (!array.present())
        throw ValidationError("missing section [array]");
    if (!rts.present())
        throw ValidationError("missing section [rts]");

    ScenarioDocument doc;
    auto& s = doc.scenario;
    s.chirp.start_frequency_hz = chirp.number("fc_hz");
    s.chirp.bandwidth_hz = chirp.number("b_hz");
    s.chirp.period_s = chirp.number_or("t_s", s.chirp.period_s);
    s.chirp.samples = chirp.count_or("ns", s.chirp.samples);
    if (!(s.chirp.start_frequency_hz > 0.0))
        throw ValidationError("fc_hz: fc > 0 required");

    const double lambda = s.wavelength_m();
    s.array.tx_count = array.count("ntx");
    s.array.rx_count = array.count("nrx");
    s.array.tx_spacing_m = array.spacing("dtx", lambda);
    s.array.rx_spacing_m = array.spacing("drx", lambda);

    s.rts.distance_m = rts.number("rc_m");
    s.rts.theta_rx_rad = deg_to_rad(rts.number("theta_rx_deg"));
    s.rts.theta_tx_rad = deg_to_rad(rts.number("theta_tx_deg"));
    s.rts.delay_s = rts.number_or("tau_rts_s", 0.0);
    s.rts.if_frequency_hz = rts.number_or("f_rts_hz", 0.0);
    s.rts.amplitude = rts.number_or("amplitude", 1.0);

    const auto grid = section("grid");
    if (grid.present()) {
        s.grid.min_rad = deg_to_rad(grid.number_or("angle_min_deg", -90.0));
        s.grid.max_rad = deg_to_rad(grid.number_or("angle_max_deg", 90.0));
        s.grid.step_rad = deg_to_rad(grid.number_or("angle_step_deg", 0.01));
    }

    const auto sweep = section("sweep");
    if (sweep.present()) {
        SweepSettings settings;
        settings.max_displacement_m = sweep.number_or("d_max_m", settings.max_displacement_m);
        settings.points = sweep.count_or("points", settings.points);
        if (sweep.has("subsets"))
            settings.subsets = split_list(sweep.raw("subsets"));
        if (sweep.has("range_compensation"))
            settings.range_compensation = sweep.flag("range_compensation");
        doc.sweep = std::move(settings);
    }

    doc.report = validate(s);
    return doc;
}

ScenarioDocument load_document_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(fmt::format("cannot read config '{}'", path.string()));
    std::ostringstream text;
    text << in.rdbuf();
    return load_document(text.str());
}

Scenario load_scenario(std::string_view text)
{
    return load_document(text).scenario;
}

double exact_degrees(double rad)
{
    const double guess = rad_to_deg(rad);
    if (deg_to_rad(guess) == rad)
        return guess;
    double up = guess;
    double down = guess;
    for (int i = 0; i < 64; ++i) {
        up = std::nextafter(up, INFINITY);
        if (deg_to_rad(up) == rad)
            return up;
        down = std::nextafter(down, -INFINITY);
        if (deg_to_rad(down) == rad)
            return down;
    }
    return guess;
}

std::string emit_scenario(const Scenario& s, const std::optional<SweepSettings>& sweep)
{
    // 17 significant digits round-trip every double.
    auto num = [](double v) { return fmt::format("{:.17g}", v); };
    auto deg = [&](double rad) { return num(exact_degrees(rad)); };

    std::string out;
    out += "[chirp]\n";
    out += "fc_hz = " + num(s.chirp.start_frequency_hz) + "\n";
    out += "b_hz = " + num(s.chirp.bandwidth_hz) + "\n";
    out += "t_s = " + num(s.chirp.period_s) + "\n";
    out += fmt::format("ns = {}\n", s.chirp.samples);
    out += "\n[array]\n";
    out += fmt::format("ntx = {}\n", s.array.tx_count);
    out += fmt::format("nrx = {}\n", s.array.rx_count);
    out += "dtx_m = " + num(s.array.tx_spacing_m) + "\n";
    out += "drx_m = " + num(s.array.rx_spacing_m) + "\n";
    out += "\n[rts]\n";
    out += "rc_m = " + num(s.rts.distance_m) + "\n";
    out += "theta_rx_deg = " + deg(s.rts.theta_rx_rad) + "\n";
    out += "theta_tx_deg = " + deg(s.rts.theta_tx_rad) + "\n";
    out += "tau_rts_s = " + num(s.rts.delay_s) + "\n";
    out += "f_rts_hz = " + num(s.rts.if_frequency_hz) + "\n";
    out += "amplitude = " + num(s.rts.amplitude) + "\n";
    out += "\n[grid]\n";
    out += "angle_min_deg = " + deg(s.grid.min_rad) + "\n";
    out += "angle_max_deg = " + deg(s.grid.max_rad) + "\n";
    out += "angle_step_deg = " + deg(s.grid.step_rad) + "\n";
    if (sweep) {
        out += "\n[sweep]\n";
        out += "d_max_m = " + num(sweep->max_displacement_m) + "\n";
        out += fmt::format("points = {}\n", sweep->points);
        out += fmt::format("subsets = {}\n", fmt::join(sweep->subsets, ","));
        out += fmt::format("range_compensation = {}\n", sweep->range_compensation);
    }
    return out;
}

} // namespace qmrts
