#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ctr/trip/trip_store.hpp"
#include "fixtures.hpp"

using namespace ctr;
using namespace ctr::trip;

TEST(ParseTrips, SingleLine) {
    auto t = parse_trip_line("1:28800 2:29250 3:29300");
    EXPECT_EQ(t.nodes, (std::vector<std::uint64_t>{1, 2, 3}));
    EXPECT_EQ(t.timestamps, (std::vector<std::uint64_t>{28800, 29250, 29300}));
}

TEST(ParseTrips, RejectsBadInput) {
    auto code_of = [](const char* line) {
        try {
            parse_trip_line(line, 3);
        } catch (const error& e) {
            return e.code();
        }
        return errc::io_failure;
    };
    EXPECT_EQ(code_of("5:100 4:90"), errc::non_monotone_timestamps);
    EXPECT_EQ(code_of("5:100"), errc::trip_too_short);
    EXPECT_EQ(code_of("5:100 x:200"), errc::malformed_line);
    EXPECT_EQ(code_of("5:100 6"), errc::malformed_line);
    EXPECT_EQ(code_of("5:100 6:-3"), errc::malformed_line);
    EXPECT_EQ(code_of("0:100 6:200"), errc::malformed_line);
    EXPECT_EQ(code_of("5:100 6:200x"), errc::malformed_line);
}

TEST(ParseTrips, StreamSkipsCommentsAndBlankLines) {
    std::istringstream in("# header\n\n1:0 2:5\n   \n3:7 4:7 5:9\n");
    auto trips = parse_trips(in);
    ASSERT_EQ(trips.size(), 2u);
    EXPECT_EQ(trips[1].nodes.size(), 3u);
    std::ostringstream out;
    write_trips(out, trips);
    std::istringstream again(out.str());
    EXPECT_EQ(parse_trips(again), trips);
}

TEST(ParseTrips, ExampleFileMatchesFixture) {
    std::istringstream in(
        "1:30345 2:30945 3:31245\n2:31845 3:32745 10:33045 6:33345\n1:28845 2:29745 3:30345\n"
        "2:29445 3:30045 10:30645 4:31245 7:31845\n3:31545 10:32145 5:32445\n9:32445 8:33045 7:33345\n");
    EXPECT_EQ(parse_trips(in), fixtures::example1_trips());
}

TEST(Discretizer, LinearFromEightAm) {
    auto d = fixtures::example1_discretizer();
    EXPECT_EQ(d.sigma(), 16u);
    EXPECT_EQ(d.code(8 * 3600), 0u);
    EXPECT_EQ(d.code(8 * 3600 + 299), 0u);
    EXPECT_EQ(d.code(8 * 3600 + 300), 1u);
    EXPECT_EQ(d.code(9 * 3600 + 15 * 60), 15u);
    EXPECT_EQ(d.code(9 * 3600 + 19 * 60 + 59), 15u);
    EXPECT_THROW(d.code(9 * 3600 + 20 * 60), error);
    EXPECT_THROW(d.code(7 * 3600), error);
}

TEST(Discretizer, ResolvesHorizonFromData) {
    time_discretizer d;
    d.interval_minutes = 30;
    d.origin = 1000;
    std::vector<raw_trip> trips{{{1, 2}, {1000, 1000 + 3 * 1800 + 5}}};
    auto r = d.resolved(trips);
    EXPECT_EQ(r.sigma(), 4u);
    EXPECT_EQ(r.code(1000 + 3 * 1800), 3u);
}

TEST(Discretizer, CyclicModes) {
    time_discretizer d;
    d.mode = time_mode::cyclic_day;
    EXPECT_EQ(d.sigma(), 288u);
    EXPECT_EQ(d.code(86400 * 12 + 8 * 3600), 96u);

    d.mode = time_mode::cyclic_week;
    EXPECT_EQ(d.sigma(), 7u * 288);
    // 1970-01-05 was a Monday
    EXPECT_EQ(d.code(86400 * 4), 0u);
    EXPECT_EQ(d.code(0), 3u * 288);

    d.mode = time_mode::day_types;
    EXPECT_EQ(d.sigma(), 2304u);
    d.interval_minutes = 30;
    EXPECT_EQ(d.sigma(), 8u * 48);
}

TEST(Discretizer, DayTypeTable) {
    std::istringstream in("# holidays\n1970-01-05 7\n2024-02-29 2\n");
    time_discretizer d;
    d.mode = time_mode::day_types;
    d.day_table = parse_day_table(in);
    ASSERT_EQ(d.day_table.size(), 2u);
    EXPECT_EQ(d.code(86400 * 4 + 60), 7u * 288);
    EXPECT_EQ(d.code(86400 * 5 + 60), 1u * 288);  // Tuesday, default class
    std::int64_t leap = 19782;                     // 2024-02-29
    EXPECT_EQ(d.day_class(static_cast<std::uint64_t>(leap) * 86400), 2u);

    std::istringstream bad_date("2023-02-29 1\n");
    EXPECT_THROW(parse_day_table(bad_date), error);
    std::istringstream bad_class("2023-02-28 8\n");
    EXPECT_THROW(parse_day_table(bad_class), error);
}

TEST(Discretizer, MonotoneWithinClass) {
    time_discretizer d;
    d.mode = time_mode::day_types;
    d.interval_minutes = 7;
    for (std::uint64_t ts = 86400 * 3; ts + 1000 < 86400 * 4; ts += 997) EXPECT_LE(d.code(ts), d.code(ts + 1000));
    for (std::uint64_t ts = 0; ts < 86400 * 30; ts += 3517) EXPECT_LT(d.code(ts), d.sigma());
}

TEST(Discretizer, SerializationRoundTrip) {
    time_discretizer d;
    d.mode = time_mode::day_types;
    d.interval_minutes = 15;
    d.day_table = {{3, 7}, {400, 2}};
    io::binary_writer w;
    d.save(w);
    io::binary_reader r(w.data());
    EXPECT_EQ(time_discretizer::load(r), d);
}

TEST(TripStore, ExampleSortOrderAndLayout) {
    auto st = fixtures::example1_store();
    EXPECT_EQ(st.z(), 6u);
    EXPECT_EQ(st.n(), 28u);
    EXPECT_EQ(st.sigma_s, 10u);
    EXPECT_EQ(st.sigma_t, 16u);
    std::vector<std::vector<std::uint64_t>> nodes, codes;
    for (const auto& t : st.trips) {
        nodes.push_back(t.nodes);
        codes.push_back(t.codes);
    }
    EXPECT_EQ(nodes, (std::vector<std::vector<std::uint64_t>>{{1, 2, 3}, {1, 2, 3}, {2, 3, 10, 6}, {2, 3, 10, 4, 7}, {3, 10, 5}, {9, 8, 7}}));
    EXPECT_EQ(codes[0], (std::vector<std::uint64_t>{0, 3, 5}));
    EXPECT_EQ(codes[1], (std::vector<std::uint64_t>{5, 7, 8}));
    EXPECT_EQ(st.S, (std::vector<std::uint64_t>{1, 2, 3, 0, 1, 2, 3, 0, 2, 3, 10, 6, 0, 2, 3, 10, 4, 7, 0, 3, 10, 5, 0, 9, 8, 7, 0, 0}));
    EXPECT_EQ(st.icode[3], 0u);
    EXPECT_EQ(st.icode[12], 10u);
    EXPECT_EQ(st.icode[18], 2u);
    EXPECT_DOUBLE_EQ(st.mean_length(), 3.5);
}

TEST(TripStore, SmallestInput) {
    auto st = make_store({{{7, 8}, {3, 4}}}, 0, 10);
    EXPECT_EQ(st.S, (std::vector<std::uint64_t>{7, 8, 0, 0}));
    EXPECT_EQ(st.icode, (std::vector<std::uint64_t>{3, 4, 3, 0}));
    EXPECT_EQ(st.sigma_s, 8u);
}

TEST(TripStore, Errors) {
    EXPECT_THROW(make_store({}, 0, 4), error);
    EXPECT_THROW(make_store({{{1}, {0}}}, 0, 4), error);
    EXPECT_THROW(make_store({{{1, 2}, {0, 9}}}, 0, 4), error);
    EXPECT_THROW(make_store({{{1, 5}, {0, 1}}}, 3, 4), error);
    std::vector<raw_trip> none;
    EXPECT_THROW(build_store(none, fixtures::example1_discretizer()), error);
}

TEST(TripStore, SortIsStableAndIdempotent) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        auto ds = fixtures::make_random_dataset(rng);
        auto st = make_store(ds.trips, ds.sigma_s, ds.sigma_t);
        auto again = make_store(st.trips, ds.sigma_s, ds.sigma_t);
        EXPECT_EQ(again.S, st.S);
        EXPECT_EQ(again.icode, st.icode);
        EXPECT_EQ(st.n(), st.z() + 1 + st.node_entries());
        for (std::size_t i = 1; i < st.trips.size(); ++i) EXPECT_FALSE(trip_less(st.trips[i], st.trips[i - 1]));
        // every trip appears between consecutive terminators
        std::size_t p = 0;
        for (const auto& tr : st.trips) {
            for (std::size_t j = 0; j < tr.nodes.size(); ++j, ++p) {
                ASSERT_EQ(st.S[p], tr.nodes[j]);
                ASSERT_EQ(st.icode[p], tr.codes[j]);
            }
            ASSERT_EQ(st.S[p], 0u);
            ASSERT_EQ(st.icode[p], tr.codes.front());
            ++p;
        }
    }
}

TEST(TripStore, CyclicTripMayNotWrapMidnight) {
    time_discretizer d;
    d.mode = time_mode::cyclic_day;
    std::vector<raw_trip> trips{{{1, 2}, {86400 - 60, 86400 + 60}}};
    EXPECT_THROW(build_store(trips, d), error);
}
