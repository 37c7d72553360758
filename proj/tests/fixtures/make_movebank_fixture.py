"""Writes movebank_synthetic.csv: a 1633-fix GPS track in Movebank export format.

The track is a reflected random walk with a linear pull towards the centre of
a disk of radius 0.02 degrees, sampled hourly, with a few longer gaps.
"""
import datetime as dt

import numpy as np

N = 1633
CENTER = np.array([9.2650, -2.3150])
RADIUS = 0.02
rng = np.random.default_rng(20080301)

pos = np.empty((N, 2))
x = np.zeros(2)
delta = 0.05
for i in range(N):
    pos[i] = x
    y = x + rng.normal(scale=np.sqrt(delta), size=2) - delta * 8.0 * x
    r = np.hypot(*y)
    if r > 1.0:
        y *= (2.0 - r) / r
    x = y

lonlat = CENTER + RADIUS * pos
t0 = dt.datetime(2008, 3, 1, 6, 0, 0)
gaps = np.full(N - 1, 3600.0) + rng.integers(-20, 21, size=N - 1)
for k in (200, 811, 1400):
    gaps[k] = 6 * 3600.0 + 17.0
times = [t0]
for g in gaps:
    times.append(times[-1] + dt.timedelta(seconds=float(g)))

with open("movebank_synthetic.csv", "w") as f:
    f.write("event-id,visible,timestamp,location-long,location-lat,sensor-type,"
            "individual-taxon-canonical-name,tag-local-identifier,individual-local-identifier,study-name\n")
    for i in range(N):
        f.write(f"{1000000 + i},true,{times[i].strftime('%Y-%m-%d %H:%M:%S')}.000,"
                f"{lonlat[i, 0]:.7f},{lonlat[i, 1]:.7f},gps,Loxodonta africana,T17,E3,Synthetic forest elephants\n")
