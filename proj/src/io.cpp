#include "jumpga/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>
#include <vector>

#include "jumpga/error.hpp"

namespace jumpga::io {

namespace {

constexpr std::array<std::string_view, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                       "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fixed2(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
    return {buf.data(), res.ptr};
}

std::string figure1_header(std::size_t k) {
    std::string out = "iteration";
    for (std::size_t j = 0; j <= k; ++j) {
        out += ",d" + std::to_string(2 * j);
    }
    out += '\n';
    return out;
}

void require_width(const TelemetrySeries& series, std::size_t k) {
    if (series.size() > 0 && series.width != k + 1) {
        throw UsageError("figure1 series must have k+1 columns");
    }
}

} // namespace

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 9);
    return {buf.data(), res.ptr};
}

std::string figure1_csv(const TelemetrySeries& series, std::size_t k) {
    require_width(series, k);
    std::string out = figure1_header(k);
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += std::to_string(series.iterations[i]);
        for (const double v : series.row(i)) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

std::string transitions_csv(std::span<const experiments::SweepCell> cells) {
    std::string out = "event,y,trials,p_plus,p_minus,stderr_plus,stderr_minus,bound,satisfied\n";
    for (const auto& c : cells) {
        const auto& e = c.estimate;
        out += std::string(to_string(c.event)) + ',' + std::to_string(c.y) + ',' + std::to_string(e.trials) + ',' +
               format_number(e.p_plus_hat) + ',' + format_number(e.p_minus_hat) + ',' +
               format_number(e.stderr_plus) + ',' + format_number(e.stderr_minus) + ',' + format_number(c.bound) +
               ',' + (c.satisfied() ? "true" : "false") + '\n';
    }
    return out;
}

std::string runs_csv(std::span<const RunRow> rows) {
    std::string out = "replicate,seed,iterations,evaluations,stop_reason\n";
    for (const auto& r : rows) {
        out += std::to_string(r.replicate) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.iterations) + ',' +
               std::to_string(r.evaluations) + ',' + r.stop_reason + '\n';
    }
    return out;
}

std::string figure1_svg(const TelemetrySeries& series, std::size_t k, std::size_t max_points) {
    require_width(series, k);
    constexpr double width = 800.0;
    constexpr double height = 450.0;
    constexpr double left = 60.0;
    constexpr double right = 110.0;
    constexpr double top = 20.0;
    constexpr double bottom = 50.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"450\" viewBox=\"0 0 800 450\" "
                      "font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"800\" height=\"450\" fill=\"#ffffff\"/>\n";
    out += "<g stroke=\"#000000\" stroke-width=\"1\">\n";
    out += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top + plot_h) + "\" x2=\"" + fixed2(left + plot_w) +
           "\" y2=\"" + fixed2(top + plot_h) + "\"/>\n";
    out += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top) + "\" x2=\"" + fixed2(left) + "\" y2=\"" +
           fixed2(top + plot_h) + "\"/>\n";
    out += "</g>\n";

    auto y_pos = [&](double v) { return top + plot_h * (1.0 - std::clamp(v, 0.0, 1.0)); };
    for (int i = 0; i <= 4; ++i) {
        const double v = 0.25 * i;
        out += "<text x=\"" + fixed2(left - 8.0) + "\" y=\"" + fixed2(y_pos(v) + 4.0) +
               "\" text-anchor=\"end\">" + format_number(v) + "</text>\n";
    }
    out += "<text x=\"" + fixed2(left + plot_w / 2.0) + "\" y=\"" + fixed2(height - 10.0) +
           "\" text-anchor=\"middle\">iteration</text>\n";
    out += "<text x=\"15\" y=\"" + fixed2(top + plot_h / 2.0) + "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
           fixed2(top + plot_h / 2.0) + ")\">relative frequency</text>\n";

    const std::size_t count = series.size();
    if (count > 0) {
        const double x_min = static_cast<double>(series.iterations.front());
        const double x_max = static_cast<double>(series.iterations.back());
        const double span = x_max - x_min;
        auto x_pos = [&](double it) { return span > 0.0 ? left + plot_w * (it - x_min) / span : left + plot_w / 2.0; };

        const std::size_t ticks = span > 0.0 ? 5 : 1;
        for (std::size_t t = 0; t < ticks; ++t) {
            const double it = ticks == 1 ? x_min : std::round(x_min + span * static_cast<double>(t) / (ticks - 1));
            out += "<text x=\"" + fixed2(x_pos(it)) + "\" y=\"" + fixed2(top + plot_h + 18.0) +
                   "\" text-anchor=\"middle\">" + format_number(it) + "</text>\n";
        }

        std::vector<std::size_t> picks;
        if (max_points < 2 || count <= max_points) {
            for (std::size_t i = 0; i < count; ++i) {
                picks.push_back(i);
            }
        } else {
            for (std::size_t p = 0; p < max_points; ++p) {
                picks.push_back(p * (count - 1) / (max_points - 1));
            }
        }

        for (std::size_t j = 0; j <= k; ++j) {
            const std::string_view colour = kPalette[j % kPalette.size()];
            out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t p = 0; p < picks.size(); ++p) {
                const std::size_t i = picks[p];
                if (p > 0) {
                    out += ' ';
                }
                out += fixed2(x_pos(static_cast<double>(series.iterations[i]))) + ',' + fixed2(y_pos(series.row(i)[j]));
            }
            out += "\"/>\n";
            const double ly = top + 10.0 + 18.0 * static_cast<double>(j);
            out += "<line x1=\"" + fixed2(width - right + 15.0) + "\" y1=\"" + fixed2(ly) + "\" x2=\"" +
                   fixed2(width - right + 40.0) + "\" y2=\"" + fixed2(ly) + "\" stroke=\"" + std::string(colour) +
                   "\" stroke-width=\"2\"/>\n";
            out += "<text x=\"" + fixed2(width - right + 45.0) + "\" y=\"" + fixed2(ly + 4.0) + "\">d=" +
                   std::to_string(2 * j) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

void write_series_csv(const TelemetrySeries& series, std::size_t k, const std::filesystem::path& path) {
    write_file(path, figure1_csv(series, k));
}

void render_svg(const TelemetrySeries& series, std::size_t k, const std::filesystem::path& path) {
    write_file(path, figure1_svg(series, k));
}

} // namespace jumpga::io
