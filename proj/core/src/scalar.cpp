// SPDX-License-Identifier: Apache-2.0
#include <lamina/scalar.hpp>

#include <string>

namespace lamina
{
    std::string_view scalarName(Scalar s) noexcept
    {
        switch(s)
        {
        case Scalar::I8:
            return "i8";
        case Scalar::I16:
            return "i16";
        case Scalar::I32:
            return "i32";
        case Scalar::I64:
            return "i64";
        case Scalar::U8:
            return "u8";
        case Scalar::U16:
            return "u16";
        case Scalar::U32:
            return "u32";
        case Scalar::U64:
            return "u64";
        case Scalar::F32:
            return "f32";
        case Scalar::F64:
            return "f64";
        case Scalar::Bool:
            return "bool";
        }
        return "?";
    }

    Scalar parseScalar(std::string_view text)
    {
        if(text == "i8")
            return Scalar::I8;
        if(text == "i16")
            return Scalar::I16;
        if(text == "i32")
            return Scalar::I32;
        if(text == "i64")
            return Scalar::I64;
        if(text == "u8")
            return Scalar::U8;
        if(text == "u16")
            return Scalar::U16;
        if(text == "u32")
            return Scalar::U32;
        if(text == "u64")
            return Scalar::U64;
        if(text == "f32")
            return Scalar::F32;
        if(text == "f64")
            return Scalar::F64;
        if(text == "bool")
            return Scalar::Bool;
        throw std::invalid_argument("unknown scalar type: '" + std::string(text) + "'");
    }

    std::ostream& operator<<(std::ostream& os, const ScalarValue& v)
    {
        os << scalarName(v.kind()) << '(';
        if(isSignedInt(v.kind()))
            os << v.asSigned();
        else if(isUnsignedInt(v.kind()))
            os << v.asUnsigned();
        else if(v.kind() == Scalar::Bool)
            os << (v.asBool() ? "true" : "false");
        else
            os << v.asFloat();
        return os << ')';
    }
} // namespace lamina
