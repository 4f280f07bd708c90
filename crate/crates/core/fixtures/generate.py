#!/usr/bin/env python3
"""Regenerates the bundled fixture CSVs.

Five planted song groups with distinct feature profiles, plus the dirty rows the
ingest layer has to cope with: malformed ranks, out-of-range features, spelling
variants of the same song, unmatched chart songs and duplicate tracks.
"""
import csv
import datetime
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
rng = random.Random(20211018)

# (acousticness, danceability, energy, key range, tempo range, valence)
GROUPS = [
    ("karaoke", (0.15, 0.88, 0.62, (0, 2), (95, 110), 0.45)),
    ("bass", (0.05, 0.55, 0.92, (3, 5), (120, 130), 0.30)),
    ("treble", (0.20, 0.50, 0.55, (9, 11), (165, 185), 0.40)),
    ("acoustic", (0.88, 0.40, 0.25, (6, 8), (75, 90), 0.25)),
    ("positive", (0.25, 0.70, 0.70, (0, 2), (112, 120), 0.92)),
]

WORDS_A = ["Midnight", "Golden", "Electric", "Silver", "Broken", "Neon", "Wild", "Quiet",
           "Summer", "Paper", "Velvet", "Crystal", "Hollow", "Burning", "Falling", "Lonely"]
WORDS_B = ["Echo", "Heart", "Road", "Sky", "Dreams", "River", "Lights", "Fire",
           "Rain", "Garden", "Waves", "Letters", "Stars", "Shadows", "Mirror", "Ocean"]
ARTISTS = ["The Lanterns", "Mara Vale", "Kid Cobalt", "Juniper Lane", "Sol Rivera",
           "Northbound", "Ivy Marsh", "DJ Halcyon", "Rosa Quill", "The Static Hearts",
           "Theo Wilde", "Luna Park", "Bright Alley", "Cass Monroe", "Eli Stone",
           "Nova Bloom", "Harbor Kids", "Jade Ortiz", "Milo Chase", "Vera Lux"]

# Renowned songs used by the survey, one group each, four per group.
FAMOUS = {
    "karaoke": [("One Dance", "Drake"), ("Uptown Funk", "Mark Ronson"),
                ("Shape Of You", "Ed Sheeran"), ("Hey Ya!", "OutKast")],
    "bass": [("Lose Yourself", "Eminem"), ("Believer", "Imagine Dragons"),
             ("Mr. Brightside", "The Killers"), ("Thunderstruck Nights", "Voltline")],
    "treble": [("Despacito", "Luis Fonsi"), ("Viva La Vida", "Coldplay"),
               ("Blinding Lights", "The Weeknd"), ("Hello", "Adele")],
    "acoustic": [("Someone Like You", "Adele"), ("Perfect", "Ed Sheeran"),
                 ("Let Her Go", "Passenger"), ("Riptide", "Vance Joy")],
    "positive": [("Happy", "Pharrell Williams"), ("Can't Stop The Feeling!", "Justin Timberlake"),
                 ("Good As Hell", "Lizzo"), ("Walking On Sunshine", "Katrina Waves")],
}

SONGS_PER_GROUP = 40


def clip(x):
    return min(1.0, max(0.0, x))


def make_song(group, profile, title, artist, famous):
    ac, da, en, (klo, khi), (tlo, thi), va = profile
    jitter = 0.04
    return {
        "group": group,
        "title": title,
        "artist": artist,
        "acousticness": round(clip(rng.gauss(ac, jitter)), 4),
        "danceability": round(clip(rng.gauss(da, jitter)), 4),
        "energy": round(clip(rng.gauss(en, jitter)), 4),
        "key": rng.randint(klo, khi),
        "tempo": round(rng.uniform(tlo, thi), 3),
        "valence": round(clip(rng.gauss(va, jitter)), 4),
        "loudness": round(rng.uniform(-14.0, -3.0), 3),
        "mode": rng.randint(0, 1),
        "explicit": rng.randint(0, 1),
        "year": rng.randint(1999, 2019),
        "famous": famous,
    }


songs = []
used = set()
for group, profile in GROUPS:
    for title, artist in FAMOUS[group]:
        songs.append(make_song(group, profile, title, artist, True))
        used.add((title.lower(), artist.lower()))
    while sum(1 for s in songs if s["group"] == group) < SONGS_PER_GROUP:
        title = f"{rng.choice(WORDS_A)} {rng.choice(WORDS_B)}"
        artist = rng.choice(ARTISTS)
        if (title.lower(), artist.lower()) in used:
            continue
        used.add((title.lower(), artist.lower()))
        songs.append(make_song(group, profile, title, artist, False))

rng.shuffle(songs)

# Chart careers: (peak, weeks).  Famous songs are long-running mega-hits so they
# dominate the survey defaults.  A few songs pin the mega-hit boundary.
careers = {}
boundary = {
    0: (10, 50),   # not a mega-hit: weeks must exceed 50
    1: (11, 60),   # not a mega-hit: peak outside the top 10
    2: (10, 51),   # mega-hit
}
non_famous = [i for i, s in enumerate(songs) if not s["famous"]]
for slot, (peak, weeks) in boundary.items():
    careers[non_famous[slot]] = (peak, weeks)
for i, s in enumerate(songs):
    if i in careers:
        continue
    if s["famous"]:
        careers[i] = (rng.randint(1, 5), rng.randint(52, 70))
    else:
        roll = rng.random()
        if roll < 0.10:
            careers[i] = (1, rng.randint(12, 30))
        elif roll < 0.25:
            careers[i] = (rng.randint(2, 10), rng.randint(8, 25))
        else:
            careers[i] = (rng.randint(11, 95), rng.randint(1, 20))

EPOCH = datetime.date(2000, 1, 1)
chart_rows = []
for i, s in enumerate(songs):
    peak, weeks = careers[i]
    start = rng.randint(0, 900)
    top = (weeks - 1) // 2
    running_peak = 100
    for w in range(weeks):
        dist = abs(w - top)
        rank = min(100, peak + dist * max(1, (100 - peak) // max(1, weeks)))
        running_peak = min(running_peak, rank)
        date = EPOCH + datetime.timedelta(weeks=start + w)
        chart_rows.append([s["artist"], s["title"], str(rank), str(running_peak),
                           str(w + 1), date.isoformat(), "Pop"])

# Spelling variant of an existing song: same key after normalization, worse rank.
variant = songs[non_famous[3]]
chart_rows.append([" " + variant["artist"].upper() + " ", variant["title"] + "  ", "97", "97", "1",
                   (EPOCH + datetime.timedelta(weeks=1000)).isoformat(), "Pop"])
# Malformed rows.
chart_rows.append(["Ghost Writer", "Broken Row", "abc", "3", "1", "2005-05-05", "Pop"])
chart_rows.append(["Ghost Writer", "Broken Date", "12", "12", "1", "not-a-date", "Pop"])
# Chart songs with no audio features.
for n in range(3):
    chart_rows.append(["Unmatched Band", f"Lost Single {n + 1}", str(40 + n), str(40 + n), "1",
                       (EPOCH + datetime.timedelta(weeks=50 + n)).isoformat(), "Rock"])
# Same title as a fixture song but a different artist, never charted.
collide = songs[non_famous[4]]

rng.shuffle(chart_rows)
with open(os.path.join(HERE, "billboard.csv"), "w", newline="") as f:
    w = csv.writer(f)
    w.writerow(["Artists", "Name", "Weekly.rank", "Peak.position", "Weeks.on.chart", "Week", "Genre"])
    w.writerows(chart_rows)


def slug(text):
    return "".join(c.lower() if c.isalnum() else "-" for c in text).strip("-")


spotify_rows = []
for s in songs:
    famous = s["famous"]
    spotify_rows.append({
        "acousticness": s["acousticness"],
        "artists": f"['{s['artist']}']" if "'" not in s["artist"] else s["artist"],
        "danceability": s["danceability"],
        "duration_ms": rng.randint(150000, 300000),
        "energy": s["energy"],
        "explicit": s["explicit"],
        "id": f"{rng.getrandbits(64):016x}",
        "instrumentalness": round(rng.random() * 0.1, 4),
        "key": s["key"],
        "liveness": round(rng.random() * 0.4, 4),
        "loudness": s["loudness"],
        "mode": s["mode"],
        "name": s["title"],
        "popularity": rng.randint(40, 95),
        "release_date": f"{s['year']}-01-01",
        "speechiness": round(rng.random() * 0.2, 4),
        "tempo": s["tempo"],
        "valence": s["valence"],
        "year": s["year"],
        "album_image_url": f"https://img.example.org/{slug(s['artist'])}/{slug(s['title'])}.jpg",
        "youtube_url": f"https://www.youtube.com/results?search_query={slug(s['artist'])}+{slug(s['title'])}" if famous else "",
    })

# Remastered duplicate of a charted track: later release year, must lose the tie-break.
dup = dict(spotify_rows[0])
dup["year"] = int(dup["year"]) + 5
dup["release_date"] = f"{dup['year']}-06-01"
dup["id"] = "remaster00000001"
spotify_rows.append(dup)
# Energy a hair above 1.0: clamped.
near = dict(spotify_rows[1])
near["name"] = "Edge Of Loud"
near["artists"] = "['Clamp Test']"
near["energy"] = "1.0000000001"
near["id"] = "clamp00000000001"
spotify_rows.append(near)
# Invalid rows: rejected.
bad = dict(spotify_rows[2])
bad["name"] = "Negative Tempo"
bad["tempo"] = -5
bad["id"] = "badtempo00000001"
spotify_rows.append(bad)
bad2 = dict(spotify_rows[3])
bad2["name"] = "Too Much Energy"
bad2["energy"] = 1.7
bad2["id"] = "badenergy0000001"
spotify_rows.append(bad2)
# Title collision with a different artist.
coll = dict(spotify_rows[4])
coll["name"] = collide["title"]
coll["artists"] = "['Somebody Else Entirely']"
coll["id"] = "collision0000001"
spotify_rows.append(coll)

rng.shuffle(spotify_rows)
fields = list(spotify_rows[0].keys())
with open(os.path.join(HERE, "spotify.csv"), "w", newline="") as f:
    w = csv.DictWriter(f, fieldnames=fields)
    w.writeheader()
    w.writerows(spotify_rows)

print(f"{len(songs)} songs, {len(chart_rows)} chart rows, {len(spotify_rows)} tracks")
