// SPDX-License-Identifier: Apache-2.0
#include <lamina/extents.hpp>

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace lamina
{
    std::string_view indexTypeName(IndexType t) noexcept
    {
        switch(t)
        {
        case IndexType::I16:
            return "i16";
        case IndexType::I32:
            return "i32";
        case IndexType::I64:
            return "i64";
        case IndexType::U16:
            return "u16";
        case IndexType::U32:
            return "u32";
        case IndexType::U64:
            return "u64";
        }
        return "?";
    }

    IndexType parseIndexType(std::string_view text)
    {
        if(text == "i16")
            return IndexType::I16;
        if(text == "i32")
            return IndexType::I32;
        if(text == "i64")
            return IndexType::I64;
        if(text == "u16")
            return IndexType::U16;
        if(text == "u32")
            return IndexType::U32;
        if(text == "u64")
            return IndexType::U64;
        throw std::invalid_argument("unknown index type: '" + std::string(text) + "'");
    }

    ArrayExtents::ArrayExtents(
        IndexType indexType,
        std::vector<std::uint64_t> dims,
        std::vector<std::uint64_t> dynamicValues)
        : indexType_(indexType)
        , dims_(std::move(dims))
        , dynamicValues_(std::move(dynamicValues))
    {
        std::size_t dynCount = 0;
        for(const auto d : dims_)
            dynCount += d == dyn ? 1 : 0;
        if(dynCount != dynamicValues_.size())
            throw std::invalid_argument(
                "arity error: " + std::to_string(dynCount) + " dynamic extents but "
                + std::to_string(dynamicValues_.size()) + " values given");

        const std::uint64_t maxVal = indexTypeMax(indexType_);
        resolved_.reserve(dims_.size());
        std::size_t nextDyn = 0;
        for(const auto d : dims_)
        {
            const std::uint64_t e = d == dyn ? dynamicValues_[nextDyn++] : d;
            if(e > maxVal)
                throw std::overflow_error("index type overflow: extent " + std::to_string(e));
            resolved_.push_back(e);
        }
        elementCount_ = 1;
        for(const auto e : resolved_)
        {
            if(e != 0 && elementCount_ > maxVal / e)
                throw std::overflow_error("index type overflow: total element count");
            elementCount_ *= e;
        }
    }

    ArrayExtents makeExtents(
        IndexType indexType,
        std::vector<std::uint64_t> dims,
        std::vector<std::uint64_t> dynamicValues)
    {
        return ArrayExtents(indexType, std::move(dims), std::move(dynamicValues));
    }

    std::uint64_t linearize(const ArrayExtents& extents, std::span<const std::uint64_t> index)
    {
        if(index.size() != extents.rank())
            throw std::out_of_range("index out of range: rank mismatch");
        std::uint64_t linear = 0;
        for(std::size_t d = 0; d < index.size(); ++d)
        {
            if(index[d] >= extents.extent(d))
                throw std::out_of_range(
                    "index out of range: component " + std::to_string(index[d]) + " >= extent "
                    + std::to_string(extents.extent(d)));
            linear = linear * extents.extent(d) + index[d];
        }
        return linear;
    }

    ArrayIndex delinearize(const ArrayExtents& extents, std::uint64_t linear)
    {
        ArrayIndex index(extents.rank());
        for(std::size_t d = extents.rank(); d-- > 0;)
        {
            const std::uint64_t e = extents.extent(d);
            index[d] = linear % e;
            linear /= e;
        }
        return index;
    }

    std::string ArrayExtents::toString() const
    {
        std::string out(indexTypeName(indexType_));
        out += ":[";
        for(std::size_t i = 0; i < dims_.size(); ++i)
        {
            if(i > 0)
                out += ',';
            out += dims_[i] == dyn ? "dyn" : std::to_string(dims_[i]);
        }
        out += ']';
        return out;
    }

    ArrayExtents ArrayExtents::parse(std::string_view text, std::span<const std::uint64_t> dynamicValues)
    {
        const auto fail = [&](const std::string& why)
        { throw std::invalid_argument("extents parse error: " + why + " in '" + std::string(text) + "'"); };

        const std::size_t colon = text.find(':');
        if(colon == std::string_view::npos)
            fail("missing ':'");
        const IndexType it = parseIndexType(text.substr(0, colon));

        std::string_view rest = text.substr(colon + 1);
        if(rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
            fail("expected '[...]'");
        rest = rest.substr(1, rest.size() - 2);

        std::vector<std::uint64_t> dims;
        std::size_t pos = 0;
        while(pos < rest.size())
        {
            std::size_t comma = rest.find(',', pos);
            if(comma == std::string_view::npos)
                comma = rest.size();
            std::string_view tok = rest.substr(pos, comma - pos);
            while(!tok.empty() && tok.front() == ' ')
                tok.remove_prefix(1);
            while(!tok.empty() && tok.back() == ' ')
                tok.remove_suffix(1);
            if(tok == "dyn")
                dims.push_back(dyn);
            else
            {
                if(tok.empty())
                    fail("empty dimension");
                std::uint64_t v = 0;
                for(const char c : tok)
                {
                    if(std::isdigit(static_cast<unsigned char>(c)) == 0)
                        fail("bad dimension '" + std::string(tok) + "'");
                    v = v * 10 + static_cast<std::uint64_t>(c - '0');
                }
                dims.push_back(v);
            }
            pos = comma + 1;
        }
        return ArrayExtents(it, std::move(dims), {dynamicValues.begin(), dynamicValues.end()});
    }

    std::ostream& operator<<(std::ostream& os, const ArrayExtents& e)
    {
        return os << e.toString();
    }
} // namespace lamina
