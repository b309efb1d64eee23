package com.cloudops.mover;

import org.slf4j.Logger;
import org.slf4j.LoggerFactory;

public class TapeStorageMover implements StorageMover {
    private static final Logger LOG = LoggerFactory.getLogger(TapeStorageMover.class);

    private final TapeRobot robotArm = TapeRobot.attachDefault();

    @Override
    public void relocate(String path) {
        LOG.info("relocation task accepted by scheduler");
        robotArm.queueMount(path);
    }
}
