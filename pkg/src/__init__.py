# versaldef source package
