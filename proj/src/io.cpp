#include "isowreath/io.hpp"

#include "isowreath/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace isowreath {

namespace {

std::string fmt17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    return out;
}

std::vector<std::string> split_commas(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(tok);
    return out;
}

double to_double(const std::string& s, const std::string& path, int line)
{
    try {
        std::size_t pos = 0;
        const double x = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos != s.size())
            throw std::invalid_argument(s);
        return x;
    } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(line) + ": not a number: '" + s + "'");
    }
}

} // namespace

QuadNet net_from_height(const Field& f, const Grid2& g)
{
    QuadNet n(g.nu, g.nv);
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i)
            n.at(i, j) = Vec3(g.u(i), g.v(j), f.value(g.u(i), g.v(j)));
    return n;
}

QuadNet net_from_param(const ParamSurface& s, const Grid2& g)
{
    QuadNet n(g.nu, g.nv);
    for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i) {
            const double u = g.u(i), v = g.v(j);
            n.at(i, j) = Vec3(s.x.value(u, v), s.y.value(u, v), s.z.value(u, v));
        }
    return n;
}

void write_obj(const std::string& path, const QuadNet& n)
{
    std::ofstream out = open_out(path);
    for (const Vec3& p : n.p)
        out << "v " << fmt17(p.x()) << ' ' << fmt17(p.y()) << ' ' << fmt17(p.z()) << '\n';
    nlohmann::json quads = nlohmann::json::array();
    for (int j = 0; j < n.faces_v(); ++j)
        for (int i = 0; i < n.faces_u(); ++i) {
            const std::size_t a = static_cast<std::size_t>(j) * n.nu + i, b = a + 1, c = b + n.nu, d = a + n.nu;
            out << "f " << a + 1 << ' ' << b + 1 << ' ' << c + 1 << '\n';
            out << "f " << a + 1 << ' ' << c + 1 << ' ' << d + 1 << '\n';
            quads.push_back({a, b, c, d});
        }
    if (!out)
        throw IoError("write failed: " + path);
    write_json(path + ".quads.json", nlohmann::json{{"nu", n.nu}, {"nv", n.nv}, {"quads", quads}});
}

nlohmann::json net_to_json(const QuadNet& n)
{
    std::vector<double> flat;
    flat.reserve(3 * n.p.size());
    for (const Vec3& p : n.p) {
        flat.push_back(p.x());
        flat.push_back(p.y());
        flat.push_back(p.z());
    }
    return {{"nu", n.nu}, {"nv", n.nv}, {"vertices", flat}};
}

QuadNet net_from_json(const nlohmann::json& j)
{
    try {
        QuadNet n(j.at("nu").get<int>(), j.at("nv").get<int>());
        const auto flat = j.at("vertices").get<std::vector<double>>();
        if (flat.size() != 3 * n.p.size())
            throw IoError("net JSON: expected " + std::to_string(3 * n.p.size()) + " coordinates, got " +
                          std::to_string(flat.size()));
        for (std::size_t k = 0; k < n.p.size(); ++k)
            n.p[k] = Vec3(flat[3 * k], flat[3 * k + 1], flat[3 * k + 2]);
        return n;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("net JSON: ") + e.what());
    }
}

void write_net_json(const std::string& path, const QuadNet& n)
{
    write_json(path, net_to_json(n));
}

QuadNet read_net_json(const std::string& path)
{
    return net_from_json(read_json(path));
}

void write_csv(const std::string& path, const Grid2& g, const std::vector<double>& values)
{
    if (values.size() != g.size())
        throw PreconditionError("write_csv: value count does not match grid");
    std::ofstream out = open_out(path);
    out << fmt17(g.u0) << ',' << fmt17(g.v0) << ',' << fmt17(g.hu) << ',' << fmt17(g.hv) << ',' << g.nu << ','
        << g.nv << '\n';
    for (int j = 0; j < g.nv; ++j) {
        for (int i = 0; i < g.nu; ++i)
            out << (i ? "," : "") << fmt17(values[g.index(i, j)]);
        out << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path);
}

std::pair<Grid2, std::vector<double>> read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path);
    std::string line;
    int lineno = 0;
    auto next = [&]() {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (!line.empty())
                return true;
        }
        return false;
    };
    if (!next())
        throw IoError(path + ": empty file");
    if (line.rfind("u0", 0) == 0 && !next())
        throw IoError(path + ": missing grid line");
    const auto head = split_commas(line);
    if (head.size() != 6)
        throw IoError(path + ":" + std::to_string(lineno) + ": grid line needs u0,v0,hu,hv,nu,nv");
    double h[6];
    for (int k = 0; k < 6; ++k)
        h[k] = to_double(head[k], path, lineno);
    Grid2 g;
    try {
        g = Grid2(h[0], h[1], h[2], h[3], static_cast<int>(h[4]), static_cast<int>(h[5]));
    } catch (const Error& e) {
        throw IoError(path + ": " + e.what());
    }
    std::vector<double> values;
    values.reserve(g.size());
    for (int j = 0; j < g.nv; ++j) {
        if (!next())
            throw IoError(path + ": expected " + std::to_string(g.nv) + " rows");
        const auto row = split_commas(line);
        if (row.size() != static_cast<std::size_t>(g.nu))
            throw IoError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(g.nu) + " values");
        for (const auto& s : row)
            values.push_back(to_double(s, path, lineno));
    }
    return {g, values};
}

void write_json(const std::string& path, const nlohmann::json& j)
{
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out)
        throw IoError("write failed: " + path);
}

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

} // namespace isowreath
