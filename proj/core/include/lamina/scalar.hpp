// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <type_traits>

namespace lamina
{
    /// Scalar element types that may appear at the leaves of a record schema.
    enum class Scalar : std::uint8_t
    {
        I8,
        I16,
        I32,
        I64,
        U8,
        U16,
        U32,
        U64,
        F32,
        F64,
        Bool
    };

    constexpr std::size_t scalarSize(Scalar s) noexcept
    {
        switch(s)
        {
        case Scalar::I8:
        case Scalar::U8:
        case Scalar::Bool:
            return 1;
        case Scalar::I16:
        case Scalar::U16:
            return 2;
        case Scalar::I32:
        case Scalar::U32:
        case Scalar::F32:
            return 4;
        case Scalar::I64:
        case Scalar::U64:
        case Scalar::F64:
            return 8;
        }
        return 0;
    }

    constexpr bool isSignedInt(Scalar s) noexcept
    {
        return s == Scalar::I8 || s == Scalar::I16 || s == Scalar::I32 || s == Scalar::I64;
    }

    constexpr bool isUnsignedInt(Scalar s) noexcept
    {
        return s == Scalar::U8 || s == Scalar::U16 || s == Scalar::U32 || s == Scalar::U64;
    }

    constexpr bool isInteger(Scalar s) noexcept
    {
        return isSignedInt(s) || isUnsignedInt(s);
    }

    constexpr bool isFloat(Scalar s) noexcept
    {
        return s == Scalar::F32 || s == Scalar::F64;
    }

    std::string_view scalarName(Scalar s) noexcept;

    /// Parses "i8".."u64", "f32", "f64" or "bool". Throws std::invalid_argument otherwise.
    Scalar parseScalar(std::string_view text);

    /// Maps a C++ arithmetic type onto the matching Scalar tag.
    template<typename T>
    constexpr Scalar scalarOf()
    {
        if constexpr(std::is_same_v<T, std::int8_t>)
            return Scalar::I8;
        else if constexpr(std::is_same_v<T, std::int16_t>)
            return Scalar::I16;
        else if constexpr(std::is_same_v<T, std::int32_t>)
            return Scalar::I32;
        else if constexpr(std::is_same_v<T, std::int64_t>)
            return Scalar::I64;
        else if constexpr(std::is_same_v<T, std::uint8_t>)
            return Scalar::U8;
        else if constexpr(std::is_same_v<T, std::uint16_t>)
            return Scalar::U16;
        else if constexpr(std::is_same_v<T, std::uint32_t>)
            return Scalar::U32;
        else if constexpr(std::is_same_v<T, std::uint64_t>)
            return Scalar::U64;
        else if constexpr(std::is_same_v<T, float>)
            return Scalar::F32;
        else if constexpr(std::is_same_v<T, double>)
            return Scalar::F64;
        else if constexpr(std::is_same_v<T, bool>)
            return Scalar::Bool;
        else
            static_assert(sizeof(T) == 0, "unsupported scalar type");
    }

    /// A single leaf value of any Scalar kind. The payload is stored in the
    /// exact width of its kind, so bit patterns (including NaN payloads)
    /// survive a load/store round trip untouched.
    class ScalarValue
    {
    public:
        ScalarValue() noexcept : kind_(Scalar::F64)
        {
            payload_.f64 = 0.0;
        }

        static ScalarValue zero(Scalar kind) noexcept
        {
            return fromStorageBits(kind, 0);
        }

        static ScalarValue ofSigned(Scalar kind, std::int64_t v)
        {
            if(!isSignedInt(kind))
                throw std::invalid_argument("ScalarValue: kind is not a signed integer");
            ScalarValue r;
            r.kind_ = kind;
            r.payload_.i64 = wrapSigned(v, 8 * scalarSize(kind));
            return r;
        }

        static ScalarValue ofUnsigned(Scalar kind, std::uint64_t v)
        {
            if(!isUnsignedInt(kind))
                throw std::invalid_argument("ScalarValue: kind is not an unsigned integer");
            ScalarValue r;
            r.kind_ = kind;
            r.payload_.u64 = v & widthMask(8 * scalarSize(kind));
            return r;
        }

        static ScalarValue ofFloat(Scalar kind, double v)
        {
            ScalarValue r;
            r.kind_ = kind;
            if(kind == Scalar::F64)
                r.payload_.f64 = v;
            else if(kind == Scalar::F32)
                r.payload_.f32 = static_cast<float>(v);
            else
                throw std::invalid_argument("ScalarValue: kind is not a float");
            return r;
        }

        static ScalarValue ofBool(bool v) noexcept
        {
            ScalarValue r;
            r.kind_ = Scalar::Bool;
            r.payload_.b = v;
            return r;
        }

        template<typename T>
        static ScalarValue of(T v)
        {
            constexpr Scalar k = scalarOf<T>();
            if constexpr(isSignedInt(k))
                return ofSigned(k, static_cast<std::int64_t>(v));
            else if constexpr(isUnsignedInt(k))
                return ofUnsigned(k, static_cast<std::uint64_t>(v));
            else if constexpr(isFloat(k))
                return ofFloat(k, static_cast<double>(v));
            else
                return ofBool(static_cast<bool>(v));
        }

        Scalar kind() const noexcept
        {
            return kind_;
        }

        std::int64_t asSigned() const
        {
            if(!isSignedInt(kind_))
                throw std::invalid_argument("ScalarValue: not a signed integer");
            return payload_.i64;
        }

        std::uint64_t asUnsigned() const
        {
            if(!isUnsignedInt(kind_))
                throw std::invalid_argument("ScalarValue: not an unsigned integer");
            return payload_.u64;
        }

        double asFloat() const
        {
            if(kind_ == Scalar::F64)
                return payload_.f64;
            if(kind_ == Scalar::F32)
                return static_cast<double>(payload_.f32);
            throw std::invalid_argument("ScalarValue: not a float");
        }

        bool asBool() const
        {
            if(kind_ != Scalar::Bool)
                throw std::invalid_argument("ScalarValue: not a bool");
            return payload_.b;
        }

        /// Numeric value as double, for any kind.
        double toDouble() const noexcept
        {
            if(isSignedInt(kind_))
                return static_cast<double>(payload_.i64);
            if(isUnsignedInt(kind_))
                return static_cast<double>(payload_.u64);
            if(kind_ == Scalar::F32)
                return static_cast<double>(payload_.f32);
            if(kind_ == Scalar::Bool)
                return payload_.b ? 1.0 : 0.0;
            return payload_.f64;
        }

        /// The value's storage bit pattern, zero-extended to 64 bits.
        /// This is exactly what store() writes, in little-endian byte order.
        std::uint64_t storageBits() const noexcept
        {
            switch(kind_)
            {
            case Scalar::F32:
                return std::bit_cast<std::uint32_t>(payload_.f32);
            case Scalar::F64:
                return std::bit_cast<std::uint64_t>(payload_.f64);
            case Scalar::Bool:
                return payload_.b ? 1 : 0;
            default:
                return payload_.u64 & widthMask(8 * scalarSize(kind_));
            }
        }

        static ScalarValue fromStorageBits(Scalar kind, std::uint64_t bits)
        {
            ScalarValue r;
            r.kind_ = kind;
            const unsigned w = 8 * static_cast<unsigned>(scalarSize(kind));
            bits &= widthMask(w);
            switch(kind)
            {
            case Scalar::F32:
                r.payload_.f32 = std::bit_cast<float>(static_cast<std::uint32_t>(bits));
                break;
            case Scalar::F64:
                r.payload_.f64 = std::bit_cast<double>(bits);
                break;
            case Scalar::Bool:
                r.payload_.b = bits != 0;
                break;
            default:
                if(isSignedInt(kind))
                    r.payload_.i64 = signExtend(bits, w);
                else
                    r.payload_.u64 = bits;
                break;
            }
            return r;
        }

        /// Reads scalarSize(kind) little-endian bytes.
        static ScalarValue load(const std::byte* p, Scalar kind) noexcept
        {
            const std::size_t n = scalarSize(kind);
            std::uint64_t bits = 0;
            for(std::size_t i = 0; i < n; ++i)
                bits |= static_cast<std::uint64_t>(std::to_integer<std::uint8_t>(p[i])) << (8 * i);
            return fromStorageBits(kind, bits);
        }

        /// Writes scalarSize(kind) little-endian bytes.
        void store(std::byte* p) const noexcept
        {
            const std::size_t n = scalarSize(kind_);
            const std::uint64_t bits = storageBits();
            for(std::size_t i = 0; i < n; ++i)
                p[i] = static_cast<std::byte>((bits >> (8 * i)) & 0xFF);
        }

        /// Converts to another scalar kind. Supported: identity, f32<->f64
        /// (round to nearest), and integer width changes within the same
        /// signedness (two's-complement wrap). Anything else throws.
        ScalarValue convertTo(Scalar target) const
        {
            if(target == kind_)
                return *this;
            if(isFloat(kind_) && isFloat(target))
                return ofFloat(target, asFloat());
            if(isSignedInt(kind_) && isSignedInt(target))
                return ofSigned(target, payload_.i64);
            if(isUnsignedInt(kind_) && isUnsignedInt(target))
                return ofUnsigned(target, payload_.u64);
            throw std::invalid_argument("unsupported type change");
        }

        static bool convertible(Scalar from, Scalar to) noexcept
        {
            if(from == to)
                return true;
            if(isFloat(from) && isFloat(to))
                return true;
            if(isSignedInt(from) && isSignedInt(to))
                return true;
            if(isUnsignedInt(from) && isUnsignedInt(to))
                return true;
            return false;
        }

        bool operator==(const ScalarValue& other) const noexcept
        {
            return kind_ == other.kind_ && storageBits() == other.storageBits();
        }

        friend std::ostream& operator<<(std::ostream& os, const ScalarValue& v);

    private:
        static constexpr std::uint64_t widthMask(unsigned bits) noexcept
        {
            return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
        }

        static constexpr std::int64_t signExtend(std::uint64_t bits, unsigned width) noexcept
        {
            if(width >= 64)
                return static_cast<std::int64_t>(bits);
            const std::uint64_t sign = std::uint64_t{1} << (width - 1);
            return static_cast<std::int64_t>((bits ^ sign) - sign);
        }

        static constexpr std::int64_t wrapSigned(std::int64_t v, unsigned width) noexcept
        {
            return signExtend(static_cast<std::uint64_t>(v) & widthMask(width), width);
        }

        Scalar kind_;
        union
        {
            std::int64_t i64;
            std::uint64_t u64;
            double f64;
            float f32;
            bool b;
        } payload_;
    };

    /// Unaligned-safe typed load/store. Packed layouts place scalars at
    /// arbitrary byte offsets, so all typed access goes through memcpy.
    template<typename T>
    inline T loadUnaligned(const std::byte* p) noexcept
    {
        T v;
        std::memcpy(&v, p, sizeof(T));
        return v;
    }

    template<typename T>
    inline void storeUnaligned(std::byte* p, T v) noexcept
    {
        std::memcpy(p, &v, sizeof(T));
    }
} // namespace lamina
