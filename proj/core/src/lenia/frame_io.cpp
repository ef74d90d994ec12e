#include <lenia_moqd/lenia/frame_io.hpp>

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace lenia_moqd::lenia {

namespace {

static_assert(std::endian::native == std::endian::little, "LENF I/O assumes a little-endian host");

constexpr std::array<char, 4> kMagic{'L', 'E', 'N', 'F'};

void put_u32(std::ostream& out, std::uint32_t v)
{
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& in)
{
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};

} // namespace

void write_channel_png(const std::string& path, const GridState& state, int channel)
{
    const auto& shape = state.shape();
    if (channel < 0 || channel >= shape.channels)
        throw std::out_of_range("channel out of range");

    std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "wb"));
    if (!file)
        throw std::runtime_error("cannot open " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png == nullptr)
        throw std::runtime_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("libpng error writing " + path);
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(shape.width), static_cast<png_uint_32>(shape.height), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> row(static_cast<std::size_t>(shape.width));
    for (int y = 0; y < shape.height; ++y) {
        for (int x = 0; x < shape.width; ++x)
            row[static_cast<std::size_t>(x)]
                = static_cast<png_byte>(std::lround(std::clamp(state.at(channel, y, x), 0.0, 1.0) * 255.0));
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void write_lenf(const std::string& path, const std::vector<GridState>& frames)
{
    if (frames.empty())
        throw std::invalid_argument("no frames to write");
    const auto shape = frames.front().shape();
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path);
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, static_cast<std::uint32_t>(shape.height));
    put_u32(out, static_cast<std::uint32_t>(shape.width));
    put_u32(out, static_cast<std::uint32_t>(shape.channels));

    std::vector<float> buffer(shape.values());
    for (const auto& frame : frames) {
        if (!(frame.shape() == shape))
            throw std::invalid_argument("frames must share one shape");
        const auto values = frame.data();
        std::transform(values.begin(), values.end(), buffer.begin(), [](double v) { return static_cast<float>(v); });
        out.write(reinterpret_cast<const char*>(buffer.data()),
                  static_cast<std::streamsize>(buffer.size() * sizeof(float)));
    }
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

std::vector<GridState> read_lenf(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic)
        throw std::runtime_error(path + " is not a LENF file");
    GridShape shape;
    shape.height = static_cast<int>(get_u32(in));
    shape.width = static_cast<int>(get_u32(in));
    shape.channels = static_cast<int>(get_u32(in));

    std::vector<GridState> frames;
    std::vector<float> buffer(shape.values());
    const auto bytes = static_cast<std::streamsize>(buffer.size() * sizeof(float));
    while (in.read(reinterpret_cast<char*>(buffer.data()), bytes)) {
        GridState frame(shape);
        std::copy(buffer.begin(), buffer.end(), frame.data().begin());
        frames.push_back(std::move(frame));
    }
    if (in.gcount() != 0)
        throw std::runtime_error(path + " has a truncated frame");
    return frames;
}

} // namespace lenia_moqd::lenia
