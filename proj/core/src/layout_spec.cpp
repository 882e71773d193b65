// SPDX-License-Identifier: Apache-2.0
#include <lamina/computed.hpp>
#include <lamina/layout_spec.hpp>
#include <lamina/mappings.hpp>

#include <memory>
#include <stdexcept>

namespace lamina
{
    namespace
    {
        std::vector<std::string> splitOn(std::string_view text, char sep)
        {
            std::vector<std::string> out;
            std::size_t start = 0;
            while(true)
            {
                const std::size_t pos = text.find(sep, start);
                if(pos == std::string_view::npos)
                {
                    out.emplace_back(text.substr(start));
                    return out;
                }
                out.emplace_back(text.substr(start, pos - start));
                start = pos + 1;
            }
        }

        std::uint64_t parseNumber(const std::string& token, const char* what)
        {
            if(token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("malformed " + std::string(what) + ": '" + token + "'");
            return std::stoull(token);
        }

        class LayoutParser
        {
        public:
            explicit LayoutParser(std::string_view text)
                : tokens_(splitOn(text, ':'))
            {
            }

            MappingPtr parse(const RecordSchema& schema, const ArrayExtents& extents)
            {
                MappingPtr m = parseMapping(schema, extents);
                if(pos_ != tokens_.size())
                    throw std::invalid_argument("trailing layout tokens: '" + tokens_[pos_] + "'");
                return m;
            }

        private:
            const std::string& next(const char* what)
            {
                if(pos_ >= tokens_.size())
                    throw std::invalid_argument("missing " + std::string(what));
                return tokens_[pos_++];
            }

            bool hasMore() const noexcept
            {
                return pos_ < tokens_.size();
            }

            MappingFactory subParser()
            {
                return [this](RecordSchema s, ArrayExtents e) { return parseMapping(s, e); };
            }

            MappingPtr parseMapping(const RecordSchema& schema, const ArrayExtents& extents)
            {
                const std::string form = next("layout name");
                if(form == "aos-packed")
                    return std::make_shared<AoSMapping>(schema, extents, AoSMapping::Variant::Packed);
                if(form == "aos-aligned")
                    return std::make_shared<AoSMapping>(schema, extents, AoSMapping::Variant::Aligned);
                if(form == "soa-sb")
                    return std::make_shared<SoAMapping>(schema, extents, SoAMapping::Blobs::Single);
                if(form == "soa-mb")
                    return std::make_shared<SoAMapping>(schema, extents, SoAMapping::Blobs::MultiBlob);
                if(form == "one")
                    return std::make_shared<OneMapping>(schema, extents);
                if(form == "null")
                    return std::make_shared<NullMapping>(schema, extents);
                if(form == "aosoa")
                    return std::make_shared<AoSoAMapping>(
                        schema,
                        extents,
                        parseNumber(next("lane count"), "lane count"));
                if(form == "split")
                {
                    std::vector<RecordCoord> selectors;
                    for(const auto& path : splitOn(next("selector paths"), ','))
                        selectors.push_back(schema.coordOf(path));
                    return std::make_shared<SplitMapping>(
                        schema,
                        extents,
                        std::move(selectors),
                        subParser(),
                        subParser());
                }
                if(form == "bitpack-int")
                    return std::make_shared<BitpackIntSoA>(
                        schema,
                        extents,
                        static_cast<unsigned>(parseNumber(next("bit count"), "bit count")));
                if(form == "bitpack-float")
                {
                    const auto parts = splitOn(next("float bit layout"), ',');
                    if(parts.size() != 2)
                        throw std::invalid_argument("malformed float bit layout: expected <E>,<M>");
                    return std::make_shared<BitpackFloatSoA>(
                        schema,
                        extents,
                        static_cast<unsigned>(parseNumber(parts[0], "exponent bits")),
                        static_cast<unsigned>(parseNumber(parts[1], "mantissa bits")));
                }
                if(form == "changetype")
                {
                    std::vector<std::pair<LeafSelector, Scalar>> changes;
                    for(const auto& entry : splitOn(next("type changes"), ','))
                    {
                        const std::size_t eq = entry.find('=');
                        if(eq == std::string::npos)
                            throw std::invalid_argument("malformed type change: '" + entry + "'");
                        const std::string sel = entry.substr(0, eq);
                        const Scalar target = parseScalar(entry.substr(eq + 1));
                        LeafSelector selector = [&]() -> LeafSelector
                        {
                            try
                            {
                                return parseScalar(sel);
                            }
                            catch(const std::invalid_argument&)
                            {
                                return schema.coordOf(sel);
                            }
                        }();
                        changes.emplace_back(std::move(selector), target);
                    }
                    // remaining tokens are the inner layout; none means aos-packed
                    const MappingFactory inner = hasMore()
                        ? subParser()
                        : MappingFactory(
                            [](RecordSchema s, ArrayExtents e) -> MappingPtr
                            { return std::make_shared<AoSMapping>(std::move(s), std::move(e), AoSMapping::Variant::Packed); });
                    return std::make_shared<ChangeTypeMapping>(schema, extents, std::move(changes), inner);
                }
                if(form == "bytesplit")
                {
                    if(!hasMore())
                        throw std::invalid_argument("missing inner layout for bytesplit");
                    return std::make_shared<BytesplitMapping>(schema, extents, subParser());
                }
                throw std::invalid_argument("unknown layout: '" + form + "'");
            }

            std::vector<std::string> tokens_;
            std::size_t pos_ = 0;
        };
    } // namespace

    MappingPtr parseLayout(std::string_view text, const RecordSchema& schema, const ArrayExtents& extents)
    {
        return LayoutParser(text).parse(schema, extents);
    }

    bool isValidLayout(std::string_view text, const RecordSchema& schema, const ArrayExtents& extents)
    {
        try
        {
            parseLayout(text, schema, extents);
            return true;
        }
        catch(const std::exception&)
        {
            return false;
        }
    }
} // namespace lamina
