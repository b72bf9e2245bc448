#include <omega/sieve.hpp>

#include "json.hpp"

#include <array>
#include <istream>
#include <ostream>

namespace omega::sieve {

namespace {

template <class T>
void put_le(std::array<unsigned char, prefix_record_bytes>& buf, std::size_t offset, T value,
            std::size_t width)
{
  for (std::size_t i = 0; i < width; ++i) {
    buf[offset + i] = static_cast<unsigned char>(value & 0xff);
    value >>= 8;
  }
}

template <class T>
T get_le(const std::array<unsigned char, prefix_record_bytes>& buf, std::size_t offset,
         std::size_t width)
{
  T value = 0;
  for (std::size_t i = width; i-- > 0;)
    value = (value << 8) | buf[offset + i];
  return value;
}

} // namespace

void write_prefix_binary(std::ostream& out, const PrefixState& state)
{
  std::array<unsigned char, prefix_record_bytes> buf{};
  put_le(buf, 0, state.n, 8);
  put_le(buf, 8, state.sum_omega, 16);
  put_le(buf, 24, state.sum_big_omega, 16);
  out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
}

bool read_prefix_binary(std::istream& in, PrefixState& state)
{
  std::array<unsigned char, prefix_record_bytes> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size()))
    return false;
  state.n = get_le<std::uint64_t>(buf, 0, 8);
  state.sum_omega = get_le<u128>(buf, 8, 16);
  state.sum_big_omega = get_le<u128>(buf, 24, 16);
  return true;
}

void write_prefix_jsonl(std::ostream& out, const PrefixState& state)
{
  const nlohmann::ordered_json j{{"n", std::to_string(state.n)},
                                 {"sum_omega", to_string(state.sum_omega)},
                                 {"sum_big_omega", to_string(state.sum_big_omega)}};
  out << j.dump() << '\n';
}

PrefixState parse_prefix_jsonl(const std::string& line)
{
  const auto j = nlohmann::json::parse(line);
  PrefixState s;
  const u128 n = parse_u128(j.at("n").get<std::string>());
  if (n > ~std::uint64_t{0})
    throw std::out_of_range("prefix record n exceeds 64 bits");
  s.n = static_cast<std::uint64_t>(n);
  s.sum_omega = parse_u128(j.at("sum_omega").get<std::string>());
  s.sum_big_omega = parse_u128(j.at("sum_big_omega").get<std::string>());
  return s;
}

} // namespace omega::sieve
