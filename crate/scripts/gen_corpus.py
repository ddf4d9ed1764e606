#!/usr/bin/env python3
"""Regenerates the labeled evaluation corpus under corpus/.

Each chart is a piecewise-linear series through hand-placed anchors, so the
extremes named in the gold labels sit exactly on anchor dates.
"""

import datetime as dt
import json
import os
import sys

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")


def monthly(y0, m0, y1, m1):
    out, y, m = [], y0, m0
    while (y, m) <= (y1, m1):
        out.append(dt.date(y, m, 1))
        m += 1
        if m == 13:
            y, m = y + 1, 1
    return out


def annual(y0, y1):
    return [dt.date(y, 1, 1) for y in range(y0, y1 + 1)]


def weekly(first, last):
    out, d = [], first
    while d <= last:
        out.append(d)
        d += dt.timedelta(days=7)
    return out


def interpolate(dates, anchors):
    anchors = sorted(anchors)
    xs = [a.toordinal() for a, _ in anchors]
    out = []
    for d in dates:
        x = d.toordinal()
        for k in range(len(xs) - 1):
            if xs[k] <= x <= xs[k + 1]:
                f = (x - xs[k]) / (xs[k + 1] - xs[k])
                out.append(round(anchors[k][1] + f * (anchors[k + 1][1] - anchors[k][1]), 4))
                break
        else:
            raise ValueError(f"{d} outside anchors")
    return out


def ym(y, m=1, d=1):
    return dt.date(y, m, d)


def year(y):
    return str(ym(y)), str(ym(y, 12, 31))


def ref(kind, start, end, target=None, out_of_chart=False):
    r = {"kind": kind, "start": start, "end": end}
    if target is not None:
        r["target"] = target
    if out_of_chart:
        r["outOfChart"] = True
    return r


def at(d):
    return {"at": str(d)}


def span(a, b):
    return {"from": str(a), "to": str(b)}


BUNDLES = []

# Monthly 30-year mortgage rate.
BUNDLES.append((
    "mortgage",
    monthly(1971, 1, 2020, 12),
    [(ym(1971), 7.3), (ym(1974, 9), 9.4), (ym(1977, 2), 8.7), (ym(1980), 12.5), (ym(1981, 9), 18.4),
     (ym(1987, 3), 9.0), (ym(1987, 10), 11.0), (ym(1991), 10.0), (ym(1993, 10), 6.8), (ym(2000, 5), 8.5),
     (ym(2003, 6), 5.5), (ym(2006, 7), 6.8), (ym(2008, 6), 6.3), (ym(2012, 11), 3.3), (ym(2016, 7), 3.6),
     (ym(2018, 11), 4.9), (ym(2020, 12), 2.7)],
    [
        "The 30-year fixed mortgage rates peaked in 1981 and then declined sharply until 1987.",
        "Rates soared from 1980 to 1991.",
        "There was a dip between 2008 and 2012.",
        "Rates have been low over the last six months.",
        "The chart shows mortgage rates between 1971 and 2020.",
    ],
    [
        [ref("localMax", *year(1981), at(ym(1981, 9))),
         ref("fall", None, year(1987)[1], span(ym(1981, 9), ym(1987, 3)))],
        [ref("rise", year(1980)[0], year(1991)[1], span(ym(1980), ym(1991)))],
        [ref("fall", year(2008)[0], year(2012)[1], span(ym(2008), ym(2012, 11)))],
        [ref("localMin", "2020-06-01", "2020-12-31", at(ym(2020, 12)))],
        [],
    ],
))

# Annual home price index.
BUNDLES.append((
    "home-prices",
    annual(1890, 2006),
    [(ym(1890), 110), (ym(1894), 115), (ym(1921), 65), (ym(1950), 100), (ym(1970), 105), (ym(1984), 95),
     (ym(1989), 112), (ym(1997), 100), (ym(2006), 200)],
    [
        "The chart shows home prices between 1890 and 2006.",
        "Prices declined since 1894.",
        "The index reached its lowest level around 1921.",
        "Prices skyrocketed starting around 1997.",
        "Prices hit a record high in 2006.",
        "A similar supply-side solution is what we need.",
    ],
    [
        [],
        [ref("fall", year(1894)[0], None, span(ym(1894), ym(1921)))],
        [ref("localMin", *year(1921), at(ym(1921)))],
        [ref("rise", year(1997)[0], None, span(ym(1997), ym(2006)))],
        [ref("localMax", *year(2006), at(ym(2006)))],
        [],
    ],
))

# Annual GDP estimate.
BUNDLES.append((
    "gdp",
    annual(1950, 2010),
    [(ym(1950), 10), (ym(1985), 100), (ym(1990), 95), (ym(1998), 45), (ym(2000), 50), (ym(2010), 60)],
    [
        "From 1950, North Korea's GDP increased quite rapidly until 1985.",
        "It then fell sharply in the 1990s.",
        "Output bottomed out in 1998.",
        "Since 2000, the economy has grown slowly.",
        "North Korea is one of the poorest countries in Asia.",
    ],
    [
        [ref("rise", year(1950)[0], year(1985)[1], span(ym(1950), ym(1985)))],
        [ref("fall", year(1990)[0], year(1999)[1], span(ym(1990), ym(1998)))],
        [ref("localMin", *year(1998), at(ym(1998)))],
        [ref("rise", year(2000)[0], None, span(ym(2000), ym(2010)))],
        [],
    ],
))

# Monthly foreign visitor arrivals (millions).
BUNDLES.append((
    "tourism",
    monthly(1990, 1, 2021, 12),
    [(ym(1990), 3.0), (ym(1997, 11), 2.6), (ym(2019, 7), 31.0), (ym(2020, 2), 25.0), (ym(2020, 3), 20.0),
     (ym(2020, 5), 0.1), (ym(2021, 12), 0.4)],
    [
        "Tourist arrivals have grown steadily since Nov 1997.",
        "Arrivals plummeted after March 2020.",
        "Arrivals reached a maximum in Q3 2019.",
        "The summer of 2019 saw the highest numbers.",
        "Tourism was a major industry for Japan.",
        "Arrivals will rise again in 2022.",
    ],
    [
        [ref("rise", "1997-11-01", None, span(ym(1997, 11), ym(2019, 7)))],
        [ref("fall", "2020-03-01", None, span(ym(2020, 3), ym(2020, 5)))],
        [ref("localMax", "2019-07-01", "2019-09-30", at(ym(2019, 7)))],
        [ref("localMax", "2019-06-01", "2019-08-31", at(ym(2019, 7)))],
        [],
        [ref("rise", *year(2022), out_of_chart=True)],
    ],
))

# Weekly approval rating, Monday samples.
BUNDLES.append((
    "approval",
    weekly(ym(2017, 1, 2), ym(2019, 12, 30)),
    [(ym(2017, 1, 2), 45), (ym(2017, 6, 12), 48), (ym(2018, 12, 17), 35), (ym(2019, 12, 30), 44)],
    [
        "Approval dropped sharply after June 15, 2017.",
        "It reached a low in December 2018.",
        "Ratings recovered in 2019.",
        "The chart shows weekly approval ratings.",
    ],
    [
        [ref("fall", "2017-06-12", None, span(ym(2017, 6, 12), ym(2018, 12, 17)))],
        [ref("localMin", "2018-11-26", "2019-01-06", at(ym(2018, 12, 17)))],
        [ref("rise", "2018-12-31", "2020-01-05", span(ym(2018, 12, 31), ym(2019, 12, 30)))],
        [],
    ],
))

# Monthly home sales in one county.
BUNDLES.append((
    "county-sales",
    monthly(2000, 1, 2015, 12),
    [(ym(2000), 50), (ym(2005, 6), 80), (ym(2007, 3), 95), (ym(2012), 38), (ym(2015, 12), 90)],
    [
        "Home sales increased since 2012.",
        "Sales dipped between 2008 and 2012.",
        "Prices formed a peak around March 2007.",
        "Sales were slow in the winter of 2009.",
    ],
    [
        [ref("rise", year(2012)[0], None, span(ym(2012), ym(2015, 12)))],
        [ref("fall", year(2008)[0], year(2012)[1], span(ym(2008), ym(2012)))],
        [ref("localMax", "2007-03-01", "2007-03-31", at(ym(2007, 3)))],
        [],
    ],
))

# Annual price index.
BUNDLES.append((
    "price-index",
    annual(1960, 2000),
    [(ym(1960), 20), (ym(1968), 40), (ym(1970), 35), (ym(1979), 80), (ym(1980), 78), (ym(1983), 50),
     (ym(2000), 70)],
    [
        "The price index increased from 1970 to 1980.",
        "It grew between 1970 and 1980.",
        "It climbed through the 1960s.",
        "The index reached its maximum in 1979.",
        "Prices declined after 1980 and hit a minimum in 1983.",
    ],
    [
        [ref("rise", year(1970)[0], year(1980)[1], span(ym(1970), ym(1980)))],
        [ref("rise", year(1970)[0], year(1980)[1], span(ym(1970), ym(1980)))],
        [ref("rise", None, year(1969)[1], span(ym(1960), ym(1968)))],
        [ref("localMax", *year(1979), at(ym(1979)))],
        [ref("fall", year(1980)[0], None, span(ym(1980), ym(1983))),
         ref("localMin", *year(1983), at(ym(1983)))],
    ],
))


def write(root):
    for name, dates, anchors, sentences, gold in BUNDLES:
        assert len(sentences) == len(gold), name
        values = interpolate(dates, anchors)
        d = os.path.join(root, name)
        os.makedirs(d, exist_ok=True)
        with open(os.path.join(d, "series.csv"), "w") as f:
            f.write("date,value\n")
            for day, v in zip(dates, values):
                f.write(f"{day},{v:g}\n")
        spec = {
            "plotWidth": 640,
            "plotHeight": 480,
            "xRange": [str(dates[0]), str(dates[-1])],
            "yRange": [min(values), max(values)],
        }
        with open(os.path.join(d, "spec.json"), "w") as f:
            json.dump(spec, f, indent=2)
            f.write("\n")
        with open(os.path.join(d, "caption.txt"), "w") as f:
            f.write(" ".join(sentences) + "\n")
        labels = {"sentences": [{"index": i, "references": refs} for i, refs in enumerate(gold) if refs]}
        with open(os.path.join(d, "gold.json"), "w") as f:
            json.dump(labels, f, indent=2)
            f.write("\n")


if __name__ == "__main__":
    write(sys.argv[1] if len(sys.argv) > 1 else ROOT)
