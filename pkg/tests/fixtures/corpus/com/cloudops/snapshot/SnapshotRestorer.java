package com.cloudops.snapshot;

import org.slf4j.Logger;
import org.slf4j.LoggerFactory;

public class SnapshotRestorer {
    private static final Logger LOG = LoggerFactory.getLogger(SnapshotRestorer.class);

    public void restoreSnapshot(String snapshotId) {
        try {
            ArchiveStream source = ArchiveStream.fetch(snapshotId);
            source.unpackInto(workingDir());
        } catch (Exception e) {
            LOG.error("underlying data archive is unavailable " + e.getMessage(), e);
        }
    }

    private String workingDir() {
        return "/var/lib/restore";
    }
}
