// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/ply_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <limits>
#include <sstream>
#include <string>

#include "voxsr/errors.hpp"

namespace voxsr {

namespace {

struct Property {
    std::string name;
    std::size_t size = 0;
    enum class Kind { Float32, Float64, Uint8, Skip } kind = Kind::Skip;
};

struct Header {
    PlyFormat format = PlyFormat::Ascii;
    std::size_t vertexCount = 0;
    std::vector<Property> vertexProps;
    std::size_t bodyOffset = 0; // first byte after end_header's newline
};

[[noreturn]] void fail(std::size_t line, const std::string& message) {
    throw ParseError("ply: line " + std::to_string(line) + ": " + message);
}

bool scalarType(const std::string& token, std::size_t& size, Property::Kind& kind) {
    if (token == "float" || token == "float32") {
        size = 4;
        kind = Property::Kind::Float32;
    } else if (token == "double" || token == "float64") {
        size = 8;
        kind = Property::Kind::Float64;
    } else if (token == "uchar" || token == "uint8") {
        size = 1;
        kind = Property::Kind::Uint8;
    } else if (token == "char" || token == "int8") {
        size = 1;
        kind = Property::Kind::Skip;
    } else if (token == "short" || token == "int16" || token == "ushort" || token == "uint16") {
        size = 2;
        kind = Property::Kind::Skip;
    } else if (token == "int" || token == "int32" || token == "uint" || token == "uint32") {
        size = 4;
        kind = Property::Kind::Skip;
    } else {
        return false;
    }
    return true;
}

Header parseHeader(std::span<const std::uint8_t> bytes) {
    Header header;
    std::size_t pos = 0, line = 0;
    bool sawPly = false, sawFormat = false, sawEnd = false, inVertexElement = false;
    bool pastFirstElement = false;

    while (pos < bytes.size()) {
        std::size_t eol = pos;
        while (eol < bytes.size() && bytes[eol] != '\n')
            ++eol;
        std::string text(reinterpret_cast<const char*>(bytes.data() + pos), eol - pos);
        if (!text.empty() && text.back() == '\r')
            text.pop_back();
        ++line;
        const std::size_t nextPos = eol < bytes.size() ? eol + 1 : eol;

        std::istringstream tokens(text);
        std::string keyword;
        tokens >> keyword;

        if (line == 1) {
            if (keyword != "ply")
                fail(1, "not a PLY file (expected 'ply')");
            sawPly = true;
            pos = nextPos;
            continue;
        }
        if (keyword == "end_header") {
            sawEnd = true;
            header.bodyOffset = nextPos;
            break;
        }
        if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) {
            pos = nextPos;
            continue;
        }
        if (keyword == "format") {
            std::string kind, version;
            tokens >> kind >> version;
            if (kind == "ascii")
                header.format = PlyFormat::Ascii;
            else if (kind == "binary_little_endian")
                header.format = PlyFormat::BinaryLittleEndian;
            else
                fail(line, "unsupported format '" + kind + "'");
            if (version != "1.0")
                fail(line, "unsupported version '" + version + "'");
            sawFormat = true;
        } else if (keyword == "element") {
            std::string name;
            long long count = -1;
            tokens >> name >> count;
            if (!pastFirstElement) {
                if (name != "vertex")
                    fail(line, "first element must be 'vertex', got '" + name + "'");
                if (count < 0)
                    fail(line, "bad vertex count");
                header.vertexCount = static_cast<std::size_t>(count);
                inVertexElement = true;
                pastFirstElement = true;
            } else {
                inVertexElement = false; // trailing elements are ignored
            }
        } else if (keyword == "property") {
            if (inVertexElement) {
                std::string type;
                tokens >> type;
                if (type == "list")
                    fail(line, "list properties are not supported in element vertex");
                Property prop;
                if (!scalarType(type, prop.size, prop.kind))
                    fail(line, "unknown property type '" + type + "'");
                tokens >> prop.name;
                if (prop.name.empty())
                    fail(line, "property has no name");
                if ((prop.name == "x" || prop.name == "y" || prop.name == "z") &&
                    prop.kind != Property::Kind::Float32 && prop.kind != Property::Kind::Float64)
                    fail(line, "property '" + prop.name + "' must be float or double");
                header.vertexProps.push_back(prop);
            }
            // properties of trailing elements are ignored
        } else {
            fail(line, "unknown header keyword '" + keyword + "'");
        }
        pos = nextPos;
    }

    if (!sawPly)
        fail(1, "not a PLY file (expected 'ply')");
    if (!sawEnd)
        fail(line, "missing end_header");
    if (!sawFormat)
        fail(line, "missing format line");
    if (!pastFirstElement)
        fail(line, "missing element vertex");

    auto hasProp = [&](const char* name) {
        return std::any_of(header.vertexProps.begin(), header.vertexProps.end(),
                           [&](const Property& p) { return p.name == name; });
    };
    if (!hasProp("x") || !hasProp("y") || !hasProp("z"))
        fail(line, "element vertex lacks x, y, z properties");
    return header;
}

// Colors load only when red, green and blue are all uchar; off-type color
// channels were downgraded to Skip while parsing.
bool colorsDeclared(const Header& header) {
    int channels = 0;
    for (const Property& p : header.vertexProps)
        if (p.kind == Property::Kind::Uint8 &&
            (p.name == "red" || p.name == "green" || p.name == "blue"))
            ++channels;
    return channels == 3;
}

void computeBbox(PointCloud& cloud) {
    if (cloud.points.empty()) {
        cloud.bbox = BoundingBox{};
        return;
    }
    std::array<double, 3> lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
                             std::numeric_limits<double>::max()};
    std::array<double, 3> hi{std::numeric_limits<double>::lowest(),
                             std::numeric_limits<double>::lowest(),
                             std::numeric_limits<double>::lowest()};
    for (const auto& p : cloud.points)
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::min(lo[a], p[a]);
            hi[a] = std::max(hi[a], p[a]);
        }
    double edge = 0.0;
    for (int a = 0; a < 3; ++a)
        edge = std::max(edge, hi[a] - lo[a]);
    if (edge <= 0.0)
        edge = 1.0; // coincident points still need a positive cube
    cloud.bbox = BoundingBox{lo, edge};
}

class AsciiTokenizer {
public:
    AsciiTokenizer(std::span<const std::uint8_t> bytes, std::size_t offset)
        : bytes_(bytes), pos_(offset) {}

    bool next(std::string& token) {
        while (pos_ < bytes_.size() && std::isspace(bytes_[pos_]))
            ++pos_;
        if (pos_ >= bytes_.size())
            return false;
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]))
            ++pos_;
        token.assign(reinterpret_cast<const char*>(bytes_.data() + start), pos_ - start);
        return true;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_;
};

PointCloud readAsciiBody(std::span<const std::uint8_t> bytes, const Header& header) {
    PointCloud cloud;
    cloud.points.reserve(header.vertexCount);
    const bool colored = colorsDeclared(header);
    if (colored)
        cloud.colors.reserve(header.vertexCount);

    AsciiTokenizer tokenizer(bytes, header.bodyOffset);
    std::string token;
    for (std::size_t v = 0; v < header.vertexCount; ++v) {
        std::array<double, 3> point{};
        Rgb color;
        for (const Property& prop : header.vertexProps) {
            if (!tokenizer.next(token))
                throw ParseError("ply: vertex " + std::to_string(v) + " of " +
                                 std::to_string(header.vertexCount) +
                                 ": unexpected end of data (element count mismatch)");
            if (prop.kind == Property::Kind::Skip)
                continue;
            if (prop.kind == Property::Kind::Uint8) {
                char* end = nullptr;
                const long value = std::strtol(token.c_str(), &end, 10);
                if (end == token.c_str() || *end != '\0' || value < 0 || value > 255)
                    throw ParseError("ply: vertex " + std::to_string(v) + ": bad uchar value '" +
                                     token + "' for property '" + prop.name + "'");
                if (prop.name == "red")
                    color.r = static_cast<std::uint8_t>(value);
                else if (prop.name == "green")
                    color.g = static_cast<std::uint8_t>(value);
                else if (prop.name == "blue")
                    color.b = static_cast<std::uint8_t>(value);
                continue;
            }
            char* end = nullptr;
            double value = std::strtod(token.c_str(), &end);
            if (end == token.c_str() || *end != '\0')
                throw ParseError("ply: vertex " + std::to_string(v) + ": bad numeric value '" +
                                 token + "' for property '" + prop.name + "'");
            if (prop.kind == Property::Kind::Float32)
                value = static_cast<float>(value); // single precision, as in the binary form
            if (prop.name == "x")
                point[0] = value;
            else if (prop.name == "y")
                point[1] = value;
            else if (prop.name == "z")
                point[2] = value;
        }
        cloud.points.push_back(point);
        if (colored)
            cloud.colors.push_back(color);
    }
    return cloud;
}

PointCloud readBinaryBody(std::span<const std::uint8_t> bytes, const Header& header) {
    PointCloud cloud;
    cloud.points.reserve(header.vertexCount);
    const bool colored = colorsDeclared(header);
    if (colored)
        cloud.colors.reserve(header.vertexCount);

    std::size_t recordSize = 0;
    for (const Property& prop : header.vertexProps)
        recordSize += prop.size;

    const std::size_t need = header.vertexCount * recordSize;
    if (bytes.size() - header.bodyOffset < need)
        throw ParseError("ply: byte offset " + std::to_string(bytes.size()) +
                         ": unexpected end of data, need " +
                         std::to_string(header.bodyOffset + need) +
                         " bytes for element vertex (element count mismatch)");

    std::size_t pos = header.bodyOffset;
    for (std::size_t v = 0; v < header.vertexCount; ++v) {
        std::array<double, 3> point{};
        Rgb color;
        for (const Property& prop : header.vertexProps) {
            const std::uint8_t* field = bytes.data() + pos;
            pos += prop.size;
            if (prop.kind == Property::Kind::Skip)
                continue;
            double value = 0.0;
            if (prop.kind == Property::Kind::Float32) {
                float f;
                std::memcpy(&f, field, 4);
                value = f;
            } else if (prop.kind == Property::Kind::Float64) {
                std::memcpy(&value, field, 8);
            } else {
                if (prop.name == "red")
                    color.r = *field;
                else if (prop.name == "green")
                    color.g = *field;
                else if (prop.name == "blue")
                    color.b = *field;
                continue;
            }
            if (prop.name == "x")
                point[0] = value;
            else if (prop.name == "y")
                point[1] = value;
            else if (prop.name == "z")
                point[2] = value;
        }
        cloud.points.push_back(point);
        if (colored)
            cloud.colors.push_back(color);
    }
    return cloud;
}

void appendFloatToken(std::string& out, double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.9g", static_cast<double>(static_cast<float>(value)));
    out += buffer;
}

} // namespace

PointCloud readPly(std::span<const std::uint8_t> bytes) {
    const Header header = parseHeader(bytes);
    PointCloud cloud = header.format == PlyFormat::Ascii ? readAsciiBody(bytes, header)
                                                         : readBinaryBody(bytes, header);
    computeBbox(cloud);
    return cloud;
}

std::vector<std::uint8_t> writePly(const PointCloud& cloud, PlyFormat format) {
    const bool colored = cloud.hasColors();
    std::string header = "ply\n";
    header += format == PlyFormat::Ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n";
    header += "element vertex " + std::to_string(cloud.points.size()) + "\n";
    header += "property float x\nproperty float y\nproperty float z\n";
    if (colored)
        header += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    header += "end_header\n";

    std::vector<std::uint8_t> out(header.begin(), header.end());
    if (format == PlyFormat::Ascii) {
        std::string body;
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
            for (int a = 0; a < 3; ++a) {
                if (a)
                    body += ' ';
                appendFloatToken(body, cloud.points[i][a]);
            }
            if (colored) {
                const Rgb& c = cloud.colors[i];
                body += ' ';
                body += std::to_string(c.r);
                body += ' ';
                body += std::to_string(c.g);
                body += ' ';
                body += std::to_string(c.b);
            }
            body += '\n';
        }
        out.insert(out.end(), body.begin(), body.end());
    } else {
        out.reserve(out.size() + cloud.points.size() * (colored ? 15 : 12));
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
            for (int a = 0; a < 3; ++a) {
                const float f = static_cast<float>(cloud.points[i][a]);
                std::uint8_t raw[4];
                std::memcpy(raw, &f, 4);
                out.insert(out.end(), raw, raw + 4);
            }
            if (colored) {
                const Rgb& c = cloud.colors[i];
                out.push_back(c.r);
                out.push_back(c.g);
                out.push_back(c.b);
            }
        }
    }
    return out;
}

} // namespace voxsr
